#include "hochbv/frobenius.hpp"

#include <functional>

#include "hochbv/errors.hpp"
#include "hochbv/linalg.hpp"

namespace hochbv {

namespace {

Scalar sign(const Field& f, long e) {
  return (e % 2 != 0) ? -Scalar::one(f) : Scalar::one(f);
}

void check_form_shape(const Algebra& a, const Matrix& g) {
  if (g.rows() != a.dim() || g.cols() != a.dim())
    throw MalformedInput("form must be " + std::to_string(a.dim()) + "x" +
                         std::to_string(a.dim()));
  if (g.field() != a.field()) throw FieldMismatch("form and algebra use different fields");
}

bool is_symmetric(const Matrix& g) { return g == g.transpose(); }

using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

Sparse sparse(std::span<const Scalar> v) {
  Sparse s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

// Expands a pure tensor of vectors into (tuple index, coefficient) pairs.
void expand(const std::vector<Sparse>& factors, std::size_t d,
            const std::function<void(std::size_t, const Scalar&)>& emit, const Scalar& one) {
  std::function<void(std::size_t, std::size_t, Scalar)> rec = [&](std::size_t pos,
                                                                   std::size_t idx, Scalar c) {
    if (pos == factors.size()) {
      emit(idx, c);
      return;
    }
    for (const auto& [i, v] : factors[pos]) rec(pos + 1, idx * d + i, c * v);
  };
  rec(0, 0, one);
}

}  // namespace

std::string form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::SymmetricFrobenius: return "symmetric Frobenius";
    case FormKind::Frobenius: return "Frobenius";
    case FormKind::Invalid: break;
  }
  return "invalid";
}

VerificationReport validate_form(const Algebra& a, const Matrix& g) {
  check_form_shape(a, g);
  const std::size_t d = a.dim();
  const auto& L = a.labels();
  VerificationReport rep("bilinear form");

  Check nd{.name = "non-degenerate"};
  for (const auto& v : kernel_basis(g))
    nd.fail(Witness{}.set("null vector", format_combination(v, L)));
  rep.add(std::move(nd));

  Check assoc{.name = "associative"};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Scalar lhs = Scalar::zero(a.field()), rhs = Scalar::zero(a.field());
        const Vector& ij = a.product(i, j);
        const Vector& jk = a.product(j, k);
        for (std::size_t l = 0; l < d; ++l) {
          lhs += ij[l] * g.at(l, k);
          rhs += g.at(i, l) * jk[l];
        }
        if (lhs != rhs)
          assoc.fail(Witness{}
                         .set("triple", "(" + L[i] + "," + L[j] + "," + L[k] + ")")
                         .set("<ab,c>", lhs.to_string())
                         .set("<a,bc>", rhs.to_string()));
      }
  rep.add(std::move(assoc));

  Check sym{.name = "symmetric", .informational = true};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (g.at(i, j) != g.at(j, i))
        sym.fail(Witness{}
                     .set("pair", "(" + L[i] + "," + L[j] + ")")
                     .set("<a,b>", g.at(i, j).to_string())
                     .set("<b,a>", g.at(j, i).to_string()));
  const bool symmetric = sym.pass;
  rep.add(std::move(sym));

  FormKind kind = !rep.passed() ? FormKind::Invalid
                  : symmetric   ? FormKind::SymmetricFrobenius
                                : FormKind::Frobenius;
  rep.add_label("classification: " + form_kind_name(kind));
  return rep;
}

FormKind classify_form(const Algebra& a, const Matrix& g) {
  if (!validate_form(a, g).passed()) return FormKind::Invalid;
  return is_symmetric(g) ? FormKind::SymmetricFrobenius : FormKind::Frobenius;
}

VerificationReport verify_nakayama(const Algebra& a, const Matrix& g, const AlgebraEndo& n) {
  const std::size_t d = a.dim();
  const auto& L = a.labels();
  VerificationReport rep("Nakayama automorphism");
  Check def{.name = "<a,b> = <b,N(a)>"};
  for (std::size_t i = 0; i < d; ++i) {
    Vector ni = n.n.column(i);
    for (std::size_t j = 0; j < d; ++j) {
      Scalar rhs = Scalar::zero(a.field());
      for (std::size_t l = 0; l < d; ++l) rhs += g.at(j, l) * ni[l];
      if (g.at(i, j) != rhs)
        def.fail(Witness{}
                     .set("pair", "(" + L[i] + "," + L[j] + ")")
                     .set("<a,b>", g.at(i, j).to_string())
                     .set("<b,N(a)>", rhs.to_string()));
    }
  }
  rep.add(std::move(def));
  rep.merge(validate_endomorphism(a, n), "automorphism: ");
  return rep;
}

AlgebraEndo nakayama(const Algebra& a, const Matrix& g) {
  if (classify_form(a, g) == FormKind::Invalid)
    throw MalformedInput("form is degenerate or not associative");
  AlgebraEndo n{inverse(g) * g.transpose()};
  auto rep = verify_nakayama(a, g, n);
  if (!rep.passed()) throw Inconsistency("computed Nakayama map fails its checks:\n" + rep.to_text());
  return n;
}

VerificationReport check_z_intertwining(const Algebra& a, const Matrix& g,
                                        const std::optional<AlgebraEndo>& twist) {
  check_form_shape(a, g);
  const Bimodule src = twist ? twisted_bimodule(a, *twist) : regular_bimodule(a);
  const Bimodule dst = dual_bimodule(a, regular_bimodule(a));
  const auto& L = a.labels();
  VerificationReport rep(std::string("Z: ") + (twist ? "A_N" : "A") + " -> A*");
  Check inv{.name = "Z invertible"};
  if (rank(g) != a.dim()) inv.fail(Witness{}.set("rank", std::to_string(rank(g))));
  rep.add(std::move(inv));
  Check mor{.name = "Z intertwines the actions"};
  for (std::size_t x = 0; x < a.dim(); ++x)
    for (const char* side : {"left", "right"}) {
      const bool left = side[0] == 'l';
      Matrix lhs = g * (left ? src.left[x] : src.right[x]);
      Matrix rhs = (left ? dst.left[x] : dst.right[x]) * g;
      if (lhs == rhs) continue;
      for (std::size_t c = 0; c < a.dim(); ++c) {
        Vector l = lhs.column(c), r = rhs.column(c);
        if (l != r)
          mor.fail(Witness{}
                       .set("side", side)
                       .set("a", L[x])
                       .set("m", L[c])
                       .set("Z(action)", format_combination(l, dst.labels))
                       .set("action(Z)", format_combination(r, dst.labels)));
      }
    }
  rep.add(std::move(mor));
  return rep;
}

Matrix z_isomorphism(const Algebra& a, const Matrix& g, const std::optional<AlgebraEndo>& twist) {
  auto rep = check_z_intertwining(a, g, twist);
  if (!rep.passed()) throw Inconsistency("Z is not a bimodule isomorphism:\n" + rep.to_text());
  return g;
}

Cochain push_forward(const Matrix& z, const Cochain& f) {
  if (z.cols() != f.module_dim) throw MalformedInput("module map does not match the cochain");
  const std::size_t m = f.module_dim, mo = z.rows();
  const std::size_t tuples = m ? f.values.size() / m : 0;
  Cochain out{f.degree, mo, zero_vector(z.field(), tuples * mo)};
  for (std::size_t t = 0; t < tuples; ++t) {
    Vector v = z.apply(std::span(f.values).subspan(t * m, m));
    std::copy(v.begin(), v.end(), out.values.begin() + static_cast<std::ptrdiff_t>(t * mo));
  }
  return out;
}

Cochain tradler_delta(const Algebra& a, const Matrix& g, const Cochain& f) {
  check_form_shape(a, g);
  if (!is_symmetric(g)) throw MalformedInput("Tradler's operator needs a symmetric form");
  const std::size_t d = a.dim(), n = f.degree;
  if (n == 0) throw MalformedInput("Δ lowers degree; degree-0 input has no image");
  if (f.module_dim != d || f.values.size() != d * ipow(d, n))
    throw MalformedInput("Δ needs a cochain with values in A");
  const Field k = a.field();
  const Vector with_one = g.apply(a.unit());  // ⟨e_k, 1⟩
  const Matrix solve_t = inverse(g.transpose());
  Cochain out = Cochain::zero(k, n - 1, d, d);
  for (std::size_t ti = 0; ti < ipow(d, n - 1); ++ti) {
    auto t = decode_tuple(ti, d, n - 1);
    Vector w = zero_vector(k, d);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::size_t> full = t;
      full.push_back(j);
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> rot(full.begin() + static_cast<std::ptrdiff_t>(i - 1), full.end());
        rot.insert(rot.end(), full.begin(), full.begin() + static_cast<std::ptrdiff_t>(i - 1));
        w[j] += sign(k, static_cast<long>(i * (n - 1))) * dot(f.value(encode_tuple(rot, d)), with_one);
      }
    }
    Vector y = solve_t.apply(w);
    std::copy(y.begin(), y.end(), out.values.begin() + static_cast<std::ptrdiff_t>(ti * d));
  }
  return out;
}

namespace {

StructuralMap transported_psi(const Algebra& a, const Matrix& g, const Matrix& twist,
                              std::string name) {
  const std::size_t d = a.dim();
  const Matrix zi = inverse(g);
  StructuralMap s{.name = std::move(name), .algebra = a,
                  .module = dual_bimodule(a, regular_bimodule(a)), .psi = {}, .unit = g.apply(a.unit())};
  s.psi.assign(d, std::vector<Vector>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s.psi[i][j] = g.apply(a.multiply(zi.column(i), twist.apply(zi.column(j))));
  validate_structural_map(s);
  return s;
}

}  // namespace

StructuralMap symmetric_psi(const Algebra& a, const Matrix& g) {
  check_form_shape(a, g);
  if (!is_symmetric(g)) throw MalformedInput("symmetric_psi needs a symmetric form");
  if (rank(g) != a.dim()) throw MalformedInput("form is degenerate");
  return transported_psi(a, g, Matrix::identity(a.field(), a.dim()), "symmetric");
}

StructuralMap frobenius_psi(const Algebra& a, const Matrix& g, const AlgebraEndo& n) {
  AlgebraEndo computed = nakayama(a, g);
  if (!(computed.n == n.n))
    throw MalformedInput("supplied endomorphism is not the Nakayama automorphism of the form");
  return transported_psi(a, g, n.n, "frobenius");
}

VerificationReport verify_mu(const Algebra& a, const AlgebraEndo& n) {
  const std::size_t d = a.dim();
  const auto& L = a.labels();
  auto mu = [&](const Vector& x, const Vector& y) { return a.multiply(x, n.apply(y)); };
  auto e = [&](std::size_t i) { return a.basis_vector(i); };
  VerificationReport rep("mu(a,b) = a N(b) on A_N");
  Check assoc{.name = "associative"};
  Check unital{.name = "unital"};
  Check bal{.name = "balanced"};
  Check right{.name = "right A-linear"};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector ij = mu(e(i), e(j));
      for (std::size_t k = 0; k < d; ++k) {
        Vector lhs = mu(ij, e(k)), rhs = mu(e(i), mu(e(j), e(k)));
        std::string triple = "(" + L[i] + "," + L[j] + "," + L[k] + ")";
        if (lhs != rhs)
          assoc.fail(Witness{}
                         .set("triple", triple)
                         .set("mu(mu(a,b),c)", format_combination(lhs, L))
                         .set("mu(a,mu(b,c))", format_combination(rhs, L)));
        // a·x in A_N is a N(x)
        Vector b1 = mu(a.multiply(e(i), n.apply(e(k))), e(j)), b2 = mu(e(i), a.multiply(e(k), e(j)));
        if (b1 != b2)
          bal.fail(Witness{}
                       .set("triple", triple)
                       .set("mu(a.x,b)", format_combination(b1, L))
                       .set("mu(a,x.b)", format_combination(b2, L)));
        Vector r1 = a.multiply(ij, n.apply(e(k))), r2 = mu(e(i), a.multiply(e(j), n.apply(e(k))));
        if (r1 != r2)
          right.fail(Witness{}
                         .set("triple", triple)
                         .set("mu(a,b).x", format_combination(r1, L))
                         .set("mu(a,b.x)", format_combination(r2, L)));
      }
    }
  for (std::size_t i = 0; i < d; ++i) {
    Vector l = mu(a.unit(), e(i)), r = mu(e(i), a.unit());
    if (l != e(i) || r != e(i))
      unital.fail(Witness{}
                      .set("a", L[i])
                      .set("mu(1,a)", format_combination(l, L))
                      .set("mu(a,1)", format_combination(r, L)));
  }
  rep.add(std::move(assoc));
  rep.add(std::move(unital));
  rep.add(std::move(bal));
  rep.add(std::move(right));
  return rep;
}

Matrix twisted_connes_B_matrix(const Algebra& a, const AlgebraEndo& n, std::size_t degree) {
  const Field f = a.field();
  const std::size_t d = a.dim();
  const std::size_t tn = ipow(d, degree), tn1 = ipow(d, degree + 1);
  const Matrix ninv = inverse(n.n);
  std::vector<Sparse> basis(d), twisted(d), untwisted(d);
  for (std::size_t i = 0; i < d; ++i) {
    basis[i] = {{i, Scalar::one(f)}};
    twisted[i] = sparse(n.n.column(i));
    untwisted[i] = sparse(ninv.column(i));
  }
  const Sparse unit = sparse(a.unit());
  MatrixBuilder b(f, d * tn1, d * tn);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t ti = 0; ti < tn; ++ti) {
      auto t = decode_tuple(ti, d, degree);
      const std::size_t col = x * tn + ti;
      for (std::size_t i = 0; i <= degree; ++i) {
        std::vector<Sparse> factors{unit};
        if (i == 0) {
          factors.push_back(untwisted[x]);
          for (auto j : t) factors.push_back(basis[j]);
        } else {
          for (std::size_t j = i - 1; j < degree; ++j) factors.push_back(basis[t[j]]);
          factors.push_back(basis[x]);
          for (std::size_t j = 0; j + 1 < i; ++j) factors.push_back(twisted[t[j]]);
        }
        Scalar sg = sign(f, static_cast<long>(i * degree));
        expand(factors, d, [&](std::size_t row, const Scalar& c) { b.add(row, col, sg * c); },
               Scalar::one(f));
      }
    }
  return std::move(b).build();
}

Chain twisted_connes_B(const Algebra& a, const AlgebraEndo& n, const Bimodule& m,
                       const Chain& z) {
  if (m.left.size() != a.dim() || !m.same_actions(twisted_bimodule(a, n)))
    throw UnsupportedCoefficients("B_N needs the twisted bimodule A_N as coefficients");
  if (z.values.size() != ipow(a.dim(), z.degree + 1))
    throw MalformedInput("chain length does not match degree " + std::to_string(z.degree));
  return {z.degree + 1, twisted_connes_B_matrix(a, n, z.degree).apply(z.values)};
}

namespace {

Matrix kron(const Matrix& x, const Matrix& y) {
  MatrixBuilder b(x.field(), x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (const auto& [c, v] : x.row(r))
      for (std::size_t s = 0; s < y.rows(); ++s)
        for (const auto& [e, w] : y.row(s)) b.add(r * y.rows() + s, c * y.cols() + e, v * w);
  return std::move(b).build();
}

// Columns span the fixed vectors of N^{⊗k}.
Matrix invariant_basis(const Matrix& n, std::size_t k) {
  Matrix t = n;
  for (std::size_t i = 1; i < k; ++i) t = kron(t, n);
  auto ker = kernel_basis(t - Matrix::identity(n.field(), t.rows()));
  return Matrix::from_columns(n.field(), t.rows(), ker);
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> out;
  const Matrix t = m.transpose();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(t.row_vector(c));
  return out;
}

}  // namespace

VerificationReport verify_twisted_B(const Algebra& a, const AlgebraEndo& n, std::size_t max_degree,
                                    const Caps& caps) {
  const Bimodule m = twisted_bimodule(a, n);
  if (max_degree > caps.max_degree)
    throw CapExceeded("degree " + std::to_string(max_degree) + " exceeds the configured maximum " +
                      std::to_string(caps.max_degree));
  check_cochain_cap(a, m, max_degree + 3, caps);
  const Field f = a.field();
  VerificationReport rep("twisted Connes B");
  rep.add_label("hypotheses checked, isomorphism not independently verified");

  std::vector<Matrix> b(max_degree + 4, Matrix(f, 0, 0));
  for (std::size_t k = 1; k <= max_degree + 3; ++k) b[k] = boundary_matrix(a, m, k);
  std::vector<Matrix> B;
  for (std::size_t k = 0; k <= max_degree + 1; ++k) B.push_back(twisted_connes_B_matrix(a, n, k));
  auto cycles_of = [&](std::size_t k, const Matrix& basis) {
    if (k == 0) return columns_of(basis);
    std::vector<Vector> out;
    for (const auto& c : kernel_basis(b[k] * basis)) out.push_back(basis.apply(c));
    return out;
  };
  auto is_boundary = [&](std::size_t k, const Vector& v) {
    return is_zero(v) || solve(b[k + 1], v).has_value();
  };

  Check cyc{.name = "B_N maps invariant cycles to cycles"};
  Check sq{.name = "B_N² = 0 on invariant homology"};
  Check full{.name = "B_N maps all cycles to cycles (whole complex)", .informational = true};
  for (std::size_t k = 0; k <= max_degree; ++k) {
    const Matrix inv_k = invariant_basis(n.n, k + 1);
    const Matrix inv_k1 = invariant_basis(n.n, k + 2);
    // homology representatives of the invariant subcomplex
    Reducer red(f, inv_k.rows(), 0);
    for (const auto& c : columns_of(b[k + 1] * inv_k1)) red.insert(c);
    std::vector<Vector> reps;
    for (auto& z : cycles_of(k, inv_k))
      if (red.insert(z)) reps.push_back(std::move(z));
    for (std::size_t r = 0; r < reps.size(); ++r) {
      Vector w = B[k].apply(reps[r]);
      if (!is_zero(b[k + 1].apply(w))) {
        cyc.fail(Witness{}.set("degree", std::to_string(k)).set("class", std::to_string(r)));
        continue;
      }
      if (!is_boundary(k + 2, B[k + 1].apply(w)))
        sq.fail(Witness{}.set("degree", std::to_string(k)).set("class", std::to_string(r)));
    }
    const std::vector<Vector> all = k == 0 ? columns_of(Matrix::identity(f, ipow(a.dim(), 1)))
                                           : kernel_basis(b[k]);
    std::size_t bad = 0;
    for (const auto& z : all)
      if (!is_zero(b[k + 1].apply(B[k].apply(z)))) ++bad;
    if (bad)
      full.fail(Witness{}
                    .set("degree", std::to_string(k))
                    .set("cycles not preserved", std::to_string(bad) + " of " +
                                                     std::to_string(all.size())));
  }
  rep.add(std::move(cyc));
  rep.add(std::move(sq));
  rep.add(std::move(full));
  return rep;
}

namespace {

// Polynomials as coefficient vectors, lowest degree first, no trailing zeros.
using Poly = Vector;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

long degree(const Poly& p) { return static_cast<long>(p.size()) - 1; }

Poly poly_mod(Poly a, const Poly& m) {
  trim(a);
  const Scalar lead = m.back();
  while (degree(a) >= degree(m)) {
    Scalar c = a.back() / lead;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= c * m[i];
    trim(a);
  }
  return a;
}

Poly poly_div(Poly a, const Poly& m) {
  trim(a);
  if (degree(a) < degree(m)) return {};
  Poly q(a.size() - m.size() + 1, Scalar::zero(m.front().field()));
  const Scalar lead = m.back();
  while (degree(a) >= degree(m)) {
    Scalar c = a.back() / lead;
    const std::size_t shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= c * m[i];
    trim(a);
  }
  return q;
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  Scalar lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i)
    out.push_back(p[i] * Scalar::from_integer(p[i].field(), static_cast<long>(i)));
  trim(out);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Scalar::zero(a.front().field()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly result = poly_mod(Poly{Scalar::one(m.front().field())}, m);
  base = poly_mod(base, m);
  while (e) {
    if (e & 1) result = poly_mod(poly_mul(result, base), m);
    base = poly_mod(poly_mul(base, base), m);
    e >>= 1;
  }
  return result;
}

// Distinct-degree factorization of a squarefree polynomial over F_p.
std::vector<std::size_t> factor_degrees_fp(Poly f, std::uint64_t p) {
  const Field k = f.front().field();
  std::vector<std::size_t> out;
  // h = x^{p^i} mod f
  Poly h = poly_mod(Poly{Scalar::zero(k), Scalar::one(k)}, f);
  for (std::size_t i = 1; degree(f) >= 2 * static_cast<long>(i); ++i) {
    h = powmod(h, p, f);
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, Scalar::zero(k));
    hx[1] -= Scalar::one(k);
    trim(hx);
    Poly g = poly_gcd(f, hx);
    if (degree(g) > 0) {
      for (long c = 0; c < degree(g) / static_cast<long>(i); ++c) out.push_back(i);
      f = poly_div(f, g);
      h = poly_mod(h, f);
    }
  }
  if (degree(f) > 0) out.push_back(static_cast<std::size_t>(degree(f)));
  return out;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      out.push_back(i);
      if (i * i != n) out.push_back(n / i);
    }
  return out;
}

// Rational roots peel off linear factors; whatever is left is reported as one factor.
std::vector<std::size_t> factor_degrees_q(Poly f) {
  const Field k = f.front().field();
  std::vector<std::size_t> out;
  while (degree(f) >= 1 && f.front().is_zero()) {
    out.push_back(1);
    f.erase(f.begin());
  }
  bool found = true;
  while (found && degree(f) >= 1) {
    found = false;
    mpz_class den = 1;
    for (const auto& c : f) den = lcm(den, mpz_class(c.rational().get_den()));
    std::vector<mpz_class> z;
    for (const auto& c : f) z.push_back(mpz_class(c.rational() * den));
    for (const auto& r : divisors(z.front())) {
      for (const auto& s : divisors(z.back())) {
        for (int sg : {1, -1}) {
          Scalar root = Scalar::from_rational(k, mpq_class(sg * r, s));
          Scalar val = Scalar::zero(k);
          for (auto it = f.rbegin(); it != f.rend(); ++it) val = val * root + *it;
          if (val.is_zero()) {
            f = poly_div(f, Poly{-root, Scalar::one(k)});
            out.push_back(1);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
  }
  if (degree(f) > 0) out.push_back(static_cast<std::size_t>(degree(f)));
  return out;
}

std::string poly_string(const Poly& p) {
  std::string s;
  for (long i = degree(p); i >= 0; --i) {
    const Scalar& c = p[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = c.field().is_rational() && cs.front() == '-';
    if (neg) cs.erase(0, 1);
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (i == 0) s += cs;
    else {
      if (cs != "1") s += cs + "*";
      s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string MinimalPolynomial::to_string() const { return poly_string(coefficients); }

MinimalPolynomial minimal_polynomial(const Matrix& n) {
  if (n.rows() != n.cols() || n.rows() == 0) throw MalformedInput("minimal polynomial needs a square matrix");
  const Field f = n.field();
  const std::size_t d = n.rows();
  auto flat = [&](const Matrix& m) {
    Vector v = zero_vector(f, d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (const auto& [c, x] : m.row(r)) v[r * d + c] = x;
    return v;
  };
  Reducer red(f, d * d, d + 1);
  Matrix power = Matrix::identity(f, d);
  MinimalPolynomial out;
  for (std::size_t k = 0; k <= d; ++k) {
    Vector v = flat(power);
    if (!red.insert(v, k)) {
      Vector c = *red.express(v);
      out.coefficients.assign(k + 1, Scalar::zero(f));
      for (std::size_t i = 0; i < k; ++i) out.coefficients[i] = -c[i];
      out.coefficients[k] = Scalar::one(f);
      break;
    }
    power = power * n;
  }
  if (out.coefficients.empty()) throw Inconsistency("no dependency among the first d+1 powers");
  Poly g = poly_gcd(out.coefficients, derivative(out.coefficients));
  out.squarefree = degree(g) == 0;
  if (out.squarefree) {
    out.factor_degrees = f.is_rational() ? factor_degrees_q(out.coefficients)
                                         : factor_degrees_fp(out.coefficients, f.modulus);
    out.splits = true;
    for (auto deg : out.factor_degrees) out.splits &= deg == 1;
  } else {
    Poly radical = f.is_rational() ? poly_div(out.coefficients, g) : Poly{};
    if (!radical.empty()) {
      out.factor_degrees = factor_degrees_q(monic(radical));
      out.splits = true;
      for (auto deg : out.factor_degrees) out.splits &= deg == 1;
    }
  }
  return out;
}

VerificationReport semisimplicity_check(const AlgebraEndo& n) {
  const MinimalPolynomial mp = minimal_polynomial(n.n);
  const std::string field = n.n.field().name();
  VerificationReport rep("semisimplicity of N");
  std::string degs;
  for (auto x : mp.factor_degrees) degs += (degs.empty() ? "" : ",") + std::to_string(x);
  const std::string note = "minimal polynomial " + mp.to_string() +
                           (degs.empty() ? "" : "; factor degrees " + degs);
  Check sf{.name = "minimal polynomial squarefree", .note = note};
  if (!mp.squarefree) sf.fail(Witness{}.set("minimal polynomial", mp.to_string()));
  Check sp{.name = "minimal polynomial splits over " + field, .note = note};
  if (!mp.splits) sp.fail(Witness{}.set("factor degrees", degs));
  rep.add(std::move(sf));
  rep.add(std::move(sp));
  rep.add_label(!mp.squarefree ? "not semisimple"
                : mp.splits    ? "semisimple, diagonalizable over " + field
                               : "semisimple, not diagonalizable over " + field);
  return rep;
}

BVCalculus tradler_calculus(const Algebra& a, const Matrix& g, std::size_t max_degree,
                            const Caps& caps) {
  check_form_shape(a, g);
  if (!is_symmetric(g)) throw MalformedInput("Tradler's operator needs a symmetric form");
  auto spaces = cohomology_spaces(a, regular_bimodule(a), max_degree, caps);
  return BVCalculus(
      "HH(A) with Tradler Δ", std::move(spaces), a.dim(),
      [a](const Cochain& f, const Cochain& h) { return cup_product(a, f, h); },
      [a, g](const Cochain& f) { return tradler_delta(a, g, f); }, a.unit());
}

namespace {

using Term = std::optional<CohomologyClass>;

std::string show(const Term& t) {
  return t ? format_vector(t->coords) : std::string("0 (negative degree)");
}

bool same(const Term& x, const Term& y) {
  if (!x || !y) return (!x || is_zero(x->coords)) && (!y || is_zero(y->coords));
  return x->coords == y->coords;
}

}  // namespace

VerificationReport verify_corollary_4_1(const Algebra& a, const Matrix& g, std::size_t max_degree,
                                        BracketConvention conv, const Caps& caps) {
  VerificationReport rep("HH(A) vs H_psi(A,A*)");
  const std::string conv_s = convention_name(conv);
  Check form{.name = "form is symmetric Frobenius"};
  if (classify_form(a, g) != FormKind::SymmetricFrobenius)
    form.fail(Witness{}.set("classification", form_kind_name(classify_form(a, g))));
  const bool ok = form.pass;
  rep.add(std::move(form));
  if (!ok) return rep;

  const Field k = a.field();
  const Matrix z = z_isomorphism(a, g);
  StructuralMap s = symmetric_psi(a, g);
  rep.merge(s.validation, "structural map: ");
  if (s.status != StructuralMap::Status::Pass) return rep;
  const BVCalculus hh = tradler_calculus(a, g, max_degree, caps);
  const BVCalculus hp = psi_calculus(s, max_degree, caps);

  struct Item {
    CohomologyClass c;
    Cochain rep;
    std::string name;
  };
  std::vector<Item> items;
  for (std::size_t n = 0; n <= max_degree; ++n)
    for (std::size_t j = 0; j < hh.space(n).dim(); ++j) {
      auto c = hh.space(n).basis_class(j);
      items.push_back({c, hh.representative(c),
                       "H" + std::to_string(n) + "[" + std::to_string(j) + "]"});
    }
  auto Z = [&](const Cochain& f) { return push_forward(z, f); };
  auto cls = [&](const std::optional<Cochain>& f) -> Term {
    if (!f) return std::nullopt;
    return hp.reduce(*f);
  };

  Check iso{.name = "Z_* is an isomorphism"};
  for (std::size_t n = 0; n <= max_degree; ++n) {
    std::vector<Vector> cols;
    try {
      for (const auto& it : items)
        if (it.c.degree == n) cols.push_back(hp.reduce(Z(it.rep)).coords);
    } catch (const NotACocycle& e) {
      iso.fail(Witness{}.set("degree", std::to_string(n)).set("error", e.what()));
      continue;
    }
    const std::size_t dh = hh.space(n).dim(), dp = hp.space(n).dim();
    const std::size_t r = cols.empty() ? 0 : rank(Matrix::from_columns(k, dp, cols));
    const std::string dims = "degree " + std::to_string(n) + ": dim H(A,A) " +
                             std::to_string(dh) + ", dim H(A,A*) " + std::to_string(dp) +
                             ", rank " + std::to_string(r);
    iso.note += (iso.note.empty() ? "" : "; ") + dims;
    if (r != dh || r != dp) iso.fail(Witness{}.set("dims", dims));
  }
  rep.add(std::move(iso));

  Check delta{.name = "Z_* Δ = B̄ Z_*"};
  for (const auto& it : items) {
    if (it.c.degree == 0) continue;
    Term lhs = cls(Z(*hh.delta_cochain(it.rep)));
    Term rhs = cls(hp.delta_cochain(Z(it.rep)));
    if (!same(lhs, rhs))
      delta.fail(Witness{}.set("F", it.name).set("Z_*ΔF", show(lhs)).set("B̄Z_*F", show(rhs)));
  }
  rep.add(std::move(delta));

  Check cup{.name = "Z_*(f∪g) = Z_*f ∪_psi Z_*g"};
  Check br{.name = "Z_*[f,g] = [Z_*f, Z_*g]_psi", .convention = conv_s};
  Check circ{.name = "Δ bracket equals the circle bracket up to a global sign",
             .convention = conv_s};
  std::vector<std::pair<Term, Term>> circle_pairs;
  std::vector<std::string> circle_names;
  for (const auto& f : items)
    for (const auto& h : items) {
      const std::size_t p = f.c.degree, q = h.c.degree;
      std::string pair = "(" + f.name + "," + h.name + ")";
      if (p + q <= max_degree) {
        Term lhs = cls(Z(cup_product(a, f.rep, h.rep)));
        Term rhs = cls(cup_psi(s, Z(f.rep), Z(h.rep)));
        if (!same(lhs, rhs))
          cup.fail(Witness{}.set("pair", pair).set("Z_*(f∪g)", show(lhs)).set("Z_*f∪Z_*g", show(rhs)));
      }
      if (p + q == 0 || p + q > max_degree + 1) continue;
      auto hb = hh.bracket_cochain(f.rep, h.rep, conv);
      Term lhs = cls(hb ? std::optional(Z(*hb)) : std::nullopt);
      Term rhs = cls(hp.bracket_cochain(Z(f.rep), Z(h.rep), conv));
      if (!same(lhs, rhs))
        br.fail(Witness{}.set("pair", pair).set("Z_*[f,g]", show(lhs)).set("[Z_*f,Z_*g]", show(rhs)));
      Term delta_b = hb ? Term(hh.reduce(*hb)) : std::nullopt;
      Term circle_b = hh.reduce(circle_bracket(a, f.rep, h.rep));
      circle_pairs.emplace_back(delta_b, circle_b);
      circle_names.push_back(pair);
    }
  rep.add(std::move(cup));
  rep.add(std::move(br));

  std::optional<int> global;
  for (int sg : {1, -1}) {
    bool all = true;
    for (const auto& [x, y] : circle_pairs) {
      Term yy = y;
      if (yy && sg < 0)
        for (auto& c : yy->coords) c = -c;
      all &= same(x, yy);
    }
    if (all) {
      global = sg;
      break;
    }
  }
  bool any_nonzero = false;
  for (const auto& [x, y] : circle_pairs) any_nonzero |= (x && !is_zero(x->coords)) || (y && !is_zero(y->coords));
  if (!global) {
    for (std::size_t i = 0; i < circle_pairs.size(); ++i)
      if (!same(circle_pairs[i].first, circle_pairs[i].second))
        circ.fail(Witness{}
                      .set("pair", circle_names[i])
                      .set("Δ bracket", show(circle_pairs[i].first))
                      .set("circle bracket", show(circle_pairs[i].second)));
  } else {
    circ.note = !any_nonzero ? "all brackets vanish in range"
                             : std::string("global sign ") + (*global > 0 ? "+1" : "-1");
  }
  rep.add(std::move(circ));

  SuiteBudget budget{max_degree, max_degree + 1, max_degree + 1};
  rep.merge(verify_gerstenhaber_bv(hh, conv, budget), "HH: ");
  rep.merge(verify_gerstenhaber_bv(hp, conv, budget), "psi: ");
  return rep;
}

}  // namespace hochbv
