#include "hochbv/fleet.hpp"

#include "hochbv/errors.hpp"

namespace hochbv {

Algebra make_algebra(const Field& f, std::vector<std::string> labels, Vector unit,
                     const std::vector<Entry3>& entries) {
  const std::size_t d = labels.size();
  std::vector<std::vector<Vector>> c(d, std::vector<Vector>(d, zero_vector(f, d)));
  for (const auto& [i, j, k, v] : entries) {
    if (i >= d || j >= d || k >= d) throw MalformedInput("structure constant index out of range");
    c[i][j][k] += v;
  }
  return Algebra(f, std::move(labels), std::move(c), std::move(unit));
}

namespace {

Vector lift(const Vector& v, const Field& f) {
  Vector out;
  for (const auto& s : v) {
    if (!s.field().is_rational()) throw FieldMismatch("can only change field from the rationals");
    out.push_back(Scalar::from_rational(f, s.rational()));
  }
  return out;
}

Scalar q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }

}  // namespace

Algebra change_field(const Algebra& a, const Field& f) {
  if (f == a.field()) return a;
  std::vector<std::vector<Vector>> c;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    c.emplace_back();
    for (std::size_t j = 0; j < a.dim(); ++j) c.back().push_back(lift(a.product(i, j), f));
  }
  return Algebra(f, a.labels(), std::move(c), lift(a.unit(), f));
}

Matrix change_field(const Matrix& m, const Field& f) {
  if (f == m.field()) return m;
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(lift(m.row_vector(r), f));
  return Matrix::from_rows(f, rows, m.cols());
}

namespace fleet {

Algebra rationals() {
  return make_algebra(Field::rationals(), {"1"}, {q(1)}, {{0, 0, 0, q(1)}});
}

MonomialPresentation loop_aa() {
  MonomialPresentation p;
  p.quiver.vertices = {"1"};
  p.quiver.arrows = {{"a", 0, 0}};
  p.relations = {{"a", "a"}};
  return p;
}

MonomialPresentation a2() {
  MonomialPresentation p;
  p.quiver.vertices = {"1", "2"};
  p.quiver.arrows = {{"a", 0, 1}};
  return p;
}

MonomialPresentation free_loop() {
  MonomialPresentation p;
  p.quiver.vertices = {"1"};
  p.quiver.arrows = {{"a", 0, 0}};
  return p;
}

Algebra dual_numbers() {
  return make_algebra(Field::rationals(), {"1", "x"}, {q(1), q(0)},
                      {{0, 0, 0, q(1)}, {0, 1, 1, q(1)}, {1, 0, 1, q(1)}});
}

Algebra group_z2() {
  return make_algebra(Field::rationals(), {"1", "g"}, {q(1), q(0)},
                      {{0, 0, 0, q(1)}, {0, 1, 1, q(1)}, {1, 0, 1, q(1)}, {1, 1, 0, q(1)}});
}

Algebra product_qq() {
  return make_algebra(Field::rationals(), {"e1", "e2"}, {q(1), q(1)},
                      {{0, 0, 0, q(1)}, {1, 1, 1, q(1)}});
}

Algebra quantum_exterior(const mpq_class& qq) {
  if (sgn(qq) == 0) throw MalformedInput("quantum parameter must be nonzero");
  // basis 1, x, y, xy; yx = −(1/q)·xy
  Scalar minus_inv(-1 / mpq_class(qq));
  return make_algebra(Field::rationals(), {"1", "x", "y", "xy"}, {q(1), q(0), q(0), q(0)},
                      {{0, 0, 0, q(1)},
                       {0, 1, 1, q(1)},
                       {0, 2, 2, q(1)},
                       {0, 3, 3, q(1)},
                       {1, 0, 1, q(1)},
                       {2, 0, 2, q(1)},
                       {3, 0, 3, q(1)},
                       {1, 2, 3, q(1)},
                       {2, 1, 3, minus_inv}});
}

namespace {
Matrix rational_matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto row : rows) r.emplace_back(row);
  return Matrix::from_rows(Field::rationals(), r);
}
}  // namespace

Matrix dual_numbers_form() { return rational_matrix({{q(0), q(1)}, {q(1), q(0)}}); }
Matrix group_z2_form() { return rational_matrix({{q(1), q(0)}, {q(0), q(1)}}); }
Matrix product_qq_form() { return rational_matrix({{q(1), q(0)}, {q(0), q(1)}}); }
Matrix rationals_form() { return rational_matrix({{q(1)}}); }

Matrix quantum_exterior_form(const mpq_class& qq) {
  Scalar minus_inv(-1 / mpq_class(qq));
  return rational_matrix({{q(0), q(0), q(0), q(1)},
                          {q(0), q(0), q(1), q(0)},
                          {q(0), minus_inv, q(0), q(0)},
                          {q(1), q(0), q(0), q(0)}});
}

Matrix product_qq_swap() { return rational_matrix({{q(0), q(1)}, {q(1), q(0)}}); }

}  // namespace fleet
}  // namespace hochbv
