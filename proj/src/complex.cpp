#include "hochbv/complex.hpp"

#include <cmath>

#include "hochbv/errors.hpp"

namespace hochbv {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::vector<std::size_t> decode_tuple(std::size_t index, std::size_t d, std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t k = n; k-- > 0;) {
    t[k] = index % d;
    index /= d;
  }
  return t;
}

std::size_t encode_tuple(std::span<const std::size_t> t, std::size_t d) {
  std::size_t s = 0;
  for (auto x : t) s = s * d + x;
  return s;
}

std::string tuple_label(std::span<const std::size_t> t, const std::vector<std::string>& labels) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += labels.at(t[k]);
  }
  return s + ")";
}

Cochain Cochain::zero(const Field& f, std::size_t degree, std::size_t d, std::size_t m) {
  return {degree, m, zero_vector(f, m * ipow(d, degree))};
}

Vector Cochain::value(std::size_t tuple_index) const {
  auto first = values.begin() + static_cast<std::ptrdiff_t>(tuple_index * module_dim);
  return Vector(first, first + static_cast<std::ptrdiff_t>(module_dim));
}

Matrix Cochain::as_matrix(const Field& f) const {
  const std::size_t cols = module_dim ? values.size() / module_dim : 0;
  MatrixBuilder b(f, module_dim, cols);
  for (std::size_t t = 0; t < cols; ++t)
    for (std::size_t k = 0; k < module_dim; ++k) b.add(k, t, values[t * module_dim + k]);
  return std::move(b).build();
}

namespace {

Scalar sign(const Field& f, std::size_t e) {
  return e % 2 ? -Scalar::one(f) : Scalar::one(f);
}

void check_module(const Algebra& a, const Bimodule& m) {
  if (m.left.size() != a.dim() || m.right.size() != a.dim())
    throw MalformedInput("bimodule does not match the algebra dimension");
  if (!(m.field == a.field())) throw FieldMismatch("bimodule and algebra over different fields");
}

}  // namespace

void check_cochain_cap(const Algebra& a, const Bimodule& m, std::size_t n, const Caps& caps) {
  double size = static_cast<double>(m.dim()) * std::pow(static_cast<double>(a.dim()), n);
  if (size > static_cast<double>(caps.max_columns))
    throw CapExceeded("C^" + std::to_string(n) + " has " + std::to_string(m.dim()) + "*" +
                      std::to_string(a.dim()) + "^" + std::to_string(n) +
                      " coordinates, above the cap of " + std::to_string(caps.max_columns));
}

Matrix coboundary_matrix(const Algebra& a, const Bimodule& m, std::size_t n) {
  check_module(a, m);
  const Field f = a.field();
  const std::size_t d = a.dim(), md = m.dim();
  const std::size_t rows_t = ipow(d, n + 1);
  MatrixBuilder b(f, md * rows_t, md * ipow(d, n));
  const Scalar last_sign = sign(f, n + 1);
  for (std::size_t ti = 0; ti < rows_t; ++ti) {
    auto t = decode_tuple(ti, d, n + 1);
    // a₁·f(a₂,…)
    std::size_t s = encode_tuple(std::span(t).subspan(1), d);
    for (std::size_t r = 0; r < md; ++r)
      for (const auto& [c, v] : m.left[t[0]].row(r)) b.add(ti * md + r, s * md + c, v);
    // Σ (−1)^i f(…, a_i a_{i+1}, …)
    for (std::size_t i = 1; i <= n; ++i) {
      const Vector& prod = a.product(t[i - 1], t[i]);
      Scalar sg = sign(f, i);
      for (std::size_t k = 0; k < d; ++k) {
        if (prod[k].is_zero()) continue;
        std::vector<std::size_t> tt(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
        tt.push_back(k);
        tt.insert(tt.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
        std::size_t col = encode_tuple(tt, d);
        Scalar v = sg * prod[k];
        for (std::size_t r = 0; r < md; ++r) b.add(ti * md + r, col * md + r, v);
      }
    }
    // (−1)^{n+1} f(a₁,…,aₙ)·a_{n+1}
    s = encode_tuple(std::span(t).first(n), d);
    for (std::size_t r = 0; r < md; ++r)
      for (const auto& [c, v] : m.right[t[n]].row(r))
        b.add(ti * md + r, s * md + c, last_sign * v);
  }
  return std::move(b).build();
}

Matrix boundary_matrix(const Algebra& a, const Bimodule& m, std::size_t n) {
  if (n == 0) throw MalformedInput("the boundary is defined from degree 1 on");
  check_module(a, m);
  const Field f = a.field();
  const std::size_t d = a.dim(), md = m.dim();
  const std::size_t tn = ipow(d, n), tn1 = ipow(d, n - 1);
  MatrixBuilder b(f, md * tn1, md * tn);
  std::vector<Matrix> left_t, right_t;  // columns of the actions as rows
  for (std::size_t i = 0; i < d; ++i) {
    left_t.push_back(m.left[i].transpose());
    right_t.push_back(m.right[i].transpose());
  }
  const Scalar last_sign = sign(f, n);
  for (std::size_t x = 0; x < md; ++x)
    for (std::size_t ti = 0; ti < tn; ++ti) {
      const std::size_t col = x * tn + ti;
      auto t = decode_tuple(ti, d, n);
      // x·a₁ ⊗ a₂ ⊗ …
      std::size_t rest = encode_tuple(std::span(t).subspan(1), d);
      for (const auto& [y, v] : right_t[t[0]].row(x)) b.add(y * tn1 + rest, col, v);
      for (std::size_t i = 1; i < n; ++i) {
        const Vector& prod = a.product(t[i - 1], t[i]);
        Scalar sg = sign(f, i);
        for (std::size_t k = 0; k < d; ++k) {
          if (prod[k].is_zero()) continue;
          std::vector<std::size_t> tt(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
          tt.push_back(k);
          tt.insert(tt.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
          b.add(x * tn1 + encode_tuple(tt, d), col, sg * prod[k]);
        }
      }
      // (−1)ⁿ aₙ·x ⊗ a₁ ⊗ … ⊗ a_{n−1}
      std::size_t front = encode_tuple(std::span(t).first(n - 1), d);
      for (const auto& [y, v] : left_t[t[n - 1]].row(x))
        b.add(y * tn1 + front, col, last_sign * v);
    }
  return std::move(b).build();
}

Matrix connes_B_matrix(const Algebra& a, std::size_t n) {
  const Field f = a.field();
  const std::size_t d = a.dim();
  const std::size_t tn = ipow(d, n), tn1 = ipow(d, n + 1);
  MatrixBuilder b(f, d * tn1, d * tn);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t ti = 0; ti < tn; ++ti) {
      std::vector<std::size_t> full{x};
      auto t = decode_tuple(ti, d, n);
      full.insert(full.end(), t.begin(), t.end());
      for (std::size_t i = 0; i <= n; ++i) {
        // 1 ⊗ a_i ⊗ … ⊗ aₙ ⊗ a₀ ⊗ … ⊗ a_{i−1}
        std::vector<std::size_t> rot(full.begin() + static_cast<std::ptrdiff_t>(i), full.end());
        rot.insert(rot.end(), full.begin(), full.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t r = encode_tuple(rot, d);
        Scalar sg = sign(f, n * i);
        for (std::size_t k = 0; k < d; ++k)
          if (!a.unit()[k].is_zero()) b.add(k * tn1 + r, x * tn + ti, sg * a.unit()[k]);
      }
    }
  return std::move(b).build();
}

Cochain coboundary(const Algebra& a, const Bimodule& m, const Cochain& f) {
  if (f.module_dim != m.dim() || f.values.size() != m.dim() * ipow(a.dim(), f.degree))
    throw MalformedInput("cochain shape does not match degree " + std::to_string(f.degree));
  return {f.degree + 1, m.dim(), coboundary_matrix(a, m, f.degree).apply(f.values)};
}

Chain boundary(const Algebra& a, const Bimodule& m, const Chain& z) {
  if (z.degree == 0) throw MalformedInput("boundary of a degree-0 chain");
  if (z.values.size() != m.dim() * ipow(a.dim(), z.degree))
    throw MalformedInput("chain length does not match degree " + std::to_string(z.degree));
  return {z.degree - 1, boundary_matrix(a, m, z.degree).apply(z.values)};
}

Chain connes_B(const Algebra& a, const Bimodule& m, const Chain& z) {
  if (!m.same_actions(regular_bimodule(a)))
    throw UnsupportedCoefficients("Connes' B needs the regular bimodule as coefficients");
  if (z.values.size() != ipow(a.dim(), z.degree + 1))
    throw MalformedInput("chain length does not match degree " + std::to_string(z.degree));
  return {z.degree + 1, connes_B_matrix(a, z.degree).apply(z.values)};
}

Subquotient::Subquotient(Kind kind, std::size_t degree, const Matrix& in, const Matrix& out,
                         std::function<std::string(std::size_t)> describe)
    : kind_(kind), degree_(degree), in_cols_(in.cols()),
      out_(std::make_shared<const Matrix>(out)), describe_(std::move(describe)) {
  if (in.rows() != out.cols()) throw MalformedInput("incompatible differentials");
  if (!(out * in).is_zero())
    throw Inconsistency("composite of consecutive differentials is nonzero in degree " +
                        std::to_string(degree));
  const Field f = out.field();
  const std::size_t n = out.cols();
  kernel_ = kernel_basis(out);
  const Matrix in_t = in.transpose();
  auto red = std::make_shared<Reducer>(f, n, in.cols() + kernel_.size());
  for (std::size_t c : pivot_columns(in)) {
    image_.push_back(in_t.row_vector(c));
    red->insert(image_.back(), c);
  }
  for (const auto& v : kernel_)
    if (red->insert(v, in.cols() + reps_.size())) reps_.push_back(v);
  reducer_ = std::move(red);
}

bool Subquotient::is_cycle(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) throw MalformedInput("vector has the wrong length for this degree");
  return is_zero(out_->apply(v));
}

void Subquotient::require_cycle(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) throw MalformedInput("vector has the wrong length for this degree");
  Vector dv = out_->apply(v);
  for (std::size_t i = 0; i < dv.size(); ++i)
    if (!dv[i].is_zero()) {
      std::string where = describe_ ? describe_(i) : "coordinate " + std::to_string(i);
      throw NotACocycle(std::string(kind_ == Kind::Cohomology ? "not a cocycle" : "not a cycle") +
                        ": differential is " + dv[i].to_string() + " at " + where);
    }
}

std::optional<Vector> Subquotient::express(std::span<const Scalar> v) const {
  require_cycle(v);
  auto c = reducer_->express(v);
  if (!c) throw Inconsistency("cycle outside the span of image and representatives");
  return c;
}

CohomologyClass Subquotient::reduce(std::span<const Scalar> v) const {
  auto c = *express(v);
  auto first = c.begin() + static_cast<std::ptrdiff_t>(in_cols_);
  return {degree_, Vector(first, first + static_cast<std::ptrdiff_t>(reps_.size()))};
}

std::optional<Vector> Subquotient::preimage(std::span<const Scalar> v) const {
  auto c = *express(v);
  for (std::size_t j = in_cols_; j < c.size(); ++j)
    if (!c[j].is_zero()) return std::nullopt;
  c.resize(in_cols_);
  return c;
}

Vector Subquotient::representative(const CohomologyClass& c) const {
  if (c.coords.size() != dim()) throw MalformedInput("class does not belong to this space");
  Vector v = zero_vector(field(), ambient_dim());
  for (std::size_t j = 0; j < dim(); ++j) add_scaled(v, c.coords[j], reps_[j]);
  return v;
}

CohomologyClass Subquotient::basis_class(std::size_t j) const {
  return {degree_, unit_vector(field(), dim(), j)};
}

namespace {

std::function<std::string(std::size_t)> cochain_describer(const Algebra& a, const Bimodule& m,
                                                          std::size_t n) {
  return [labels = a.labels(), mlabels = m.labels, d = a.dim(), md = m.dim(), n](std::size_t i) {
    auto t = decode_tuple(i / md, d, n);
    return "tuple " + tuple_label(t, labels) + ", coordinate " + mlabels.at(i % md);
  };
}

std::function<std::string(std::size_t)> chain_describer(const Algebra& a, const Bimodule& m,
                                                        std::size_t n) {
  return [labels = a.labels(), mlabels = m.labels, d = a.dim(), n](std::size_t i) {
    std::size_t tn = ipow(d, n);
    auto t = decode_tuple(i % tn, d, n);
    return mlabels.at(i / tn) + "⊗" + tuple_label(t, labels);
  };
}

void check_degree(std::size_t n, const Caps& caps) {
  if (n > caps.max_degree)
    throw CapExceeded("degree " + std::to_string(n) + " exceeds the configured maximum " +
                      std::to_string(caps.max_degree));
}

}  // namespace

std::vector<CohomologySpace> cohomology_spaces(const Algebra& a, const Bimodule& m,
                                               std::size_t max_n, const Caps& caps) {
  check_degree(max_n, caps);
  check_cochain_cap(a, m, max_n + 1, caps);
  std::vector<CohomologySpace> out;
  Matrix in(a.field(), m.dim(), 0);
  for (std::size_t n = 0; n <= max_n; ++n) {
    Matrix d = coboundary_matrix(a, m, n);
    out.emplace_back(Subquotient::Kind::Cohomology, n, in, d, cochain_describer(a, m, n + 1));
    in = std::move(d);
  }
  return out;
}

std::vector<HomologySpace> homology_spaces(const Algebra& a, const Bimodule& m,
                                           std::size_t max_n, const Caps& caps) {
  check_degree(max_n, caps);
  check_cochain_cap(a, m, max_n + 1, caps);
  std::vector<HomologySpace> out;
  Matrix outgoing(a.field(), 0, m.dim());
  for (std::size_t n = 0; n <= max_n; ++n) {
    Matrix in = boundary_matrix(a, m, n + 1);
    out.emplace_back(Subquotient::Kind::Homology, n, in, outgoing,
                     n ? chain_describer(a, m, n - 1) : nullptr);
    outgoing = std::move(in);
  }
  return out;
}

CohomologySpace cohomology_space(const Algebra& a, const Bimodule& m, std::size_t n,
                                 const Caps& caps) {
  check_degree(n, caps);
  check_cochain_cap(a, m, n + 1, caps);
  Matrix in = n ? coboundary_matrix(a, m, n - 1) : Matrix(a.field(), m.dim(), 0);
  return Subquotient(Subquotient::Kind::Cohomology, n, in, coboundary_matrix(a, m, n),
                     cochain_describer(a, m, n + 1));
}

HomologySpace homology_space(const Algebra& a, const Bimodule& m, std::size_t n,
                             const Caps& caps) {
  check_degree(n, caps);
  check_cochain_cap(a, m, n + 1, caps);
  Matrix out = n ? boundary_matrix(a, m, n) : Matrix(a.field(), 0, m.dim());
  return Subquotient(Subquotient::Kind::Homology, n, boundary_matrix(a, m, n + 1), out,
                     n ? chain_describer(a, m, n - 1) : nullptr);
}

std::optional<Cochain> is_coboundary(const CohomologySpace& s, const Cochain& f) {
  if (f.degree != s.degree()) throw MalformedInput("cochain degree does not match the space");
  auto g = s.preimage(f.values);
  if (!g) return std::nullopt;
  std::size_t m = f.module_dim;
  return Cochain{f.degree - (f.degree ? 1 : 0), m, std::move(*g)};
}

CohomologyClass reduce_to_class(const CohomologySpace& s, const Cochain& f) {
  if (f.degree != s.degree()) throw MalformedInput("cochain degree does not match the space");
  return s.reduce(f.values);
}

}  // namespace hochbv
