#include "hochbv/algebra.hpp"

#include "hochbv/errors.hpp"
#include "hochbv/linalg.hpp"

namespace hochbv {

Algebra::Algebra(Field f, std::vector<std::string> labels,
                 std::vector<std::vector<Vector>> products, Vector unit)
    : field_(f), labels_(std::move(labels)), c_(std::move(products)),
      unit_(std::move(unit)) {
  const std::size_t d = labels_.size();
  if (c_.size() != d) throw MalformedInput("structure constants: wrong outer size");
  for (const auto& row : c_) {
    if (row.size() != d) throw MalformedInput("structure constants: wrong row size");
    for (const auto& v : row) {
      if (v.size() != d) throw MalformedInput("structure constants: wrong vector size");
      check_field(f, v);
    }
  }
  if (unit_.size() != d) throw MalformedInput("unit vector has wrong length");
  check_field(f, unit_);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (labels_[i] == labels_[j])
        throw MalformedInput("duplicate basis label '" + labels_[i] + "'");
}

Vector Algebra::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  if (a.size() != dim() || b.size() != dim())
    throw MalformedInput("algebra element has wrong length");
  Vector out = zero_vector(field_, dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      add_scaled(out, a[i] * b[j], c_[i][j]);
    }
  }
  return out;
}

Matrix Algebra::left_multiplication(std::span<const Scalar> a) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(multiply(a, basis_vector(j)));
  return Matrix::from_columns(field_, dim(), cols);
}

Matrix Algebra::right_multiplication(std::span<const Scalar> a) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(multiply(basis_vector(j), a));
  return Matrix::from_columns(field_, dim(), cols);
}

std::size_t Algebra::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw MalformedInput("unknown basis label '" + std::string(label) + "'");
}

Matrix Bimodule::left_action(std::span<const Scalar> a) const {
  Matrix out(field, dim(), dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) out = out + left.at(i).scaled(a[i]);
  return out;
}

Matrix Bimodule::right_action(std::span<const Scalar> a) const {
  Matrix out(field, dim(), dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) out = out + right.at(i).scaled(a[i]);
  return out;
}

VerificationReport validate_algebra(const Algebra& a) {
  VerificationReport rep("algebra");
  const auto& L = a.labels();
  Check assoc{.name = "associativity"};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) {
        Vector lhs = a.multiply(a.product(i, j), a.basis_vector(k));
        Vector rhs = a.multiply(a.basis_vector(i), a.product(j, k));
        if (lhs != rhs)
          assoc.fail(Witness{}
                         .set("triple", "(" + L[i] + "," + L[j] + "," + L[k] + ")")
                         .set("(ab)c", format_combination(lhs, L))
                         .set("a(bc)", format_combination(rhs, L)));
      }
  rep.add(std::move(assoc));

  Check unit{.name = "unit"};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector e = a.basis_vector(i);
    Vector ue = a.multiply(a.unit(), e), eu = a.multiply(e, a.unit());
    if (ue != e || eu != e)
      unit.fail(Witness{}
                    .set("element", L[i])
                    .set("1*e", format_combination(ue, L))
                    .set("e*1", format_combination(eu, L)));
  }
  rep.add(std::move(unit));
  return rep;
}

VerificationReport validate_bimodule(const Algebra& a, const Bimodule& m) {
  VerificationReport rep("bimodule " + m.name);
  const std::size_t d = a.dim();
  if (m.left.size() != d || m.right.size() != d)
    throw MalformedInput("bimodule needs one action matrix per basis element");
  for (std::size_t i = 0; i < d; ++i)
    for (const Matrix* x : {&m.left[i], &m.right[i]})
      if (x->rows() != m.dim() || x->cols() != m.dim() || !(x->field() == m.field))
        throw MalformedInput("bimodule action matrix has wrong shape or field");

  const auto& L = a.labels();
  Check left{.name = "left action is multiplicative"};
  Check right{.name = "right action is anti-multiplicative"};
  Check commute{.name = "actions commute"};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector& ij = a.product(i, j);
      if (m.left_action(ij) != m.left[i] * m.left[j])
        left.fail(Witness{}.set("pair", "(" + L[i] + "," + L[j] + ")"));
      if (m.right_action(ij) != m.right[j] * m.right[i])
        right.fail(Witness{}.set("pair", "(" + L[i] + "," + L[j] + ")"));
      if (m.left[i] * m.right[j] != m.right[j] * m.left[i])
        commute.fail(Witness{}.set("pair", "(" + L[i] + "," + L[j] + ")"));
    }
  Check unit{.name = "unit acts as identity"};
  Matrix id = Matrix::identity(m.field, m.dim());
  if (m.left_action(a.unit()) != id) unit.fail(Witness{}.set("side", "left"));
  if (m.right_action(a.unit()) != id) unit.fail(Witness{}.set("side", "right"));
  rep.add(std::move(left));
  rep.add(std::move(right));
  rep.add(std::move(commute));
  rep.add(std::move(unit));
  return rep;
}

VerificationReport validate_endomorphism(const Algebra& a, const AlgebraEndo& n,
                                         bool require_invertible) {
  VerificationReport rep("endomorphism");
  const std::size_t d = a.dim();
  if (n.n.rows() != d || n.n.cols() != d)
    throw MalformedInput("endomorphism matrix must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  const auto& L = a.labels();
  Check mult{.name = "multiplicative"};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector lhs = n.apply(a.product(i, j));
      Vector rhs = a.multiply(n.apply(a.basis_vector(i)), n.apply(a.basis_vector(j)));
      if (lhs != rhs)
        mult.fail(Witness{}
                      .set("pair", "(" + L[i] + "," + L[j] + ")")
                      .set("N(xy)", format_combination(lhs, L))
                      .set("N(x)N(y)", format_combination(rhs, L)));
    }
  rep.add(std::move(mult));
  Vector nu = n.apply(a.unit());
  Check unital{.name = "unital"};
  if (nu != a.unit()) unital.fail(Witness{}.set("N(1)", format_combination(nu, L)));
  rep.add(std::move(unital));
  if (require_invertible) {
    std::size_t r = rank(n.n);
    rep.add("invertible", r == d, "rank " + std::to_string(r) + " of " + std::to_string(d));
  }
  return rep;
}

Bimodule regular_bimodule(const Algebra& a) {
  Bimodule m;
  m.kind = Bimodule::Kind::Regular;
  m.name = "A";
  m.field = a.field();
  m.labels = a.labels();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    m.left.push_back(a.left_multiplication(a.basis_vector(i)));
    m.right.push_back(a.right_multiplication(a.basis_vector(i)));
  }
  return m;
}

Bimodule dual_bimodule(const Algebra& a, const Bimodule& m) {
  if (m.left.size() != a.dim()) throw MalformedInput("bimodule does not match algebra");
  Bimodule out;
  // (a·f·b)(x) = f(b·x·a)
  out.kind = m.kind == Bimodule::Kind::Regular ? Bimodule::Kind::Dual
                                               : Bimodule::Kind::Custom;
  out.name = m.name + "*";
  out.field = m.field;
  for (const auto& l : m.labels) out.labels.push_back(l + "^∨");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.left.push_back(m.right[i].transpose());
    out.right.push_back(m.left[i].transpose());
  }
  return out;
}

Bimodule twisted_bimodule(const Algebra& a, const AlgebraEndo& n) {
  auto check = validate_endomorphism(a, n, true);
  if (!check.passed())
    throw InvalidAutomorphism("twist is not an algebra automorphism:\n" + check.to_text());
  Bimodule m = regular_bimodule(a);
  m.kind = Bimodule::Kind::Twisted;
  m.name = "A_N";
  for (std::size_t i = 0; i < a.dim(); ++i)
    m.right[i] = a.right_multiplication(n.apply(a.basis_vector(i)));
  return m;
}

std::vector<Vector> h_zero_invariants(const Algebra& a, const Bimodule& m) {
  const std::size_t k = m.dim();
  MatrixBuilder b(m.field, k * a.dim(), k);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Matrix diff = m.left[i] - m.right[i];
    for (std::size_t r = 0; r < k; ++r)
      for (const auto& [c, s] : diff.row(r)) b.add(i * k + r, c, s);
  }
  return kernel_basis(std::move(b).build());
}

}  // namespace hochbv
