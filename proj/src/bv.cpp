#include "hochbv/bv.hpp"

#include <random>

#include "hochbv/errors.hpp"

namespace hochbv {

namespace {

Scalar sign(const Field& f, long e) {
  return (e % 2 != 0) ? -Scalar::one(f) : Scalar::one(f);
}

std::string class_name(std::size_t degree, std::size_t j) {
  return "H" + std::to_string(degree) + "[" + std::to_string(j) + "]";
}

}  // namespace

std::string convention_name(BracketConvention c) {
  return c == BracketConvention::Lemma32 ? "lemma-3-2" : "bv-definition";
}

std::optional<BracketConvention> parse_convention(std::string_view s) {
  if (s == "lemma-3-2") return BracketConvention::Lemma32;
  if (s == "bv-definition") return BracketConvention::BvDefinition;
  return std::nullopt;
}

VerificationReport validate_structural_map(StructuralMap& s) {
  const Algebra& a = s.algebra;
  const Bimodule& m = s.module;
  const std::size_t md = m.dim(), d = a.dim();
  if (s.psi.size() != md || s.unit.size() != md)
    throw MalformedInput("structural map tensor does not match the module dimension");
  for (const auto& row : s.psi) {
    if (row.size() != md) throw MalformedInput("structural map tensor has a ragged row");
    for (const auto& v : row) {
      if (v.size() != md) throw MalformedInput("structural map value has the wrong length");
      check_field(m.field, v);
    }
  }
  check_field(m.field, s.unit);
  if (m.left.size() != d) throw MalformedInput("structural map module does not match the algebra");

  VerificationReport rep("structural map " + s.name);
  const auto& ML = m.labels;
  const auto& AL = a.labels();
  auto e = [&](std::size_t i) { return unit_vector(m.field, md, i); };

  Check bal{.name = "balanced"};
  for (std::size_t i = 0; i < md; ++i)
    for (std::size_t x = 0; x < d; ++x) {
      Vector fa = m.right[x].apply(e(i));
      for (std::size_t j = 0; j < md; ++j) {
        Vector lhs = s.apply(fa, e(j));
        Vector rhs = s.apply(e(i), m.left[x].apply(e(j)));
        if (lhs != rhs)
          bal.fail(Witness{}
                       .set("f", ML[i])
                       .set("a", AL[x])
                       .set("g", ML[j])
                       .set("psi(f.a, g)", format_combination(lhs, ML))
                       .set("psi(f, a.g)", format_combination(rhs, ML)));
      }
    }
  rep.add(std::move(bal));

  Check bim{.name = "bimodule morphism"};
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t i = 0; i < md; ++i)
      for (std::size_t j = 0; j < md; ++j) {
        Vector v = s.apply(e(i), e(j));
        Vector l1 = m.left[x].apply(v), l2 = s.apply(m.left[x].apply(e(i)), e(j));
        if (l1 != l2)
          bim.fail(Witness{}
                       .set("side", "left")
                       .set("a", AL[x])
                       .set("f", ML[i])
                       .set("g", ML[j])
                       .set("a.psi(f,g)", format_combination(l1, ML))
                       .set("psi(a.f,g)", format_combination(l2, ML)));
        Vector r1 = m.right[x].apply(v), r2 = s.apply(e(i), m.right[x].apply(e(j)));
        if (r1 != r2)
          bim.fail(Witness{}
                       .set("side", "right")
                       .set("a", AL[x])
                       .set("f", ML[i])
                       .set("g", ML[j])
                       .set("psi(f,g).a", format_combination(r1, ML))
                       .set("psi(f,g.a)", format_combination(r2, ML)));
      }
  rep.add(std::move(bim));

  Check assoc{.name = "associative"};
  for (std::size_t i = 0; i < md; ++i)
    for (std::size_t j = 0; j < md; ++j) {
      Vector ij = s.apply(e(i), e(j));
      for (std::size_t k = 0; k < md; ++k) {
        Vector lhs = s.apply(e(i), s.apply(e(j), e(k)));
        Vector rhs = s.apply(ij, e(k));
        if (lhs != rhs)
          assoc.fail(Witness{}
                         .set("triple", "(" + ML[i] + "," + ML[j] + "," + ML[k] + ")")
                         .set("psi(m1,psi(m2,m3))", format_combination(lhs, ML))
                         .set("psi(psi(m1,m2),m3)", format_combination(rhs, ML)));
      }
    }
  rep.add(std::move(assoc));

  Check unital{.name = "unital"};
  for (std::size_t i = 0; i < md; ++i) {
    Vector l = s.apply(s.unit, e(i)), r = s.apply(e(i), s.unit);
    if (l != e(i) || r != e(i))
      unital.fail(Witness{}
                      .set("m", ML[i])
                      .set("psi(1,m)", format_combination(l, ML))
                      .set("psi(m,1)", format_combination(r, ML)));
  }
  for (std::size_t x = 0; x < d; ++x) {
    Vector l = m.left[x].apply(s.unit), r = m.right[x].apply(s.unit);
    if (l != r)
      unital.fail(Witness{}
                      .set("unit not invariant under", AL[x])
                      .set("a.1", format_combination(l, ML))
                      .set("1.a", format_combination(r, ML)));
  }
  rep.add(std::move(unital));

  s.status = rep.passed() ? StructuralMap::Status::Pass : StructuralMap::Status::Fail;
  s.validation = rep;
  return rep;
}

bool is_dual_of_regular(const Algebra& a, const Bimodule& m) {
  return m.left.size() == a.dim() && m.dim() == a.dim() &&
         m.same_actions(dual_bimodule(a, regular_bimodule(a)));
}

Matrix bar_B_matrix(const Algebra& a, std::size_t n) {
  const Field f = a.field();
  const std::size_t d = a.dim();
  const std::size_t tn = ipow(d, n), tn1 = ipow(d, n + 1);
  MatrixBuilder b(f, tn * d, tn1 * d);
  // B̄(f)(a₁…aₙ)(a₀) = Σ_i (−1)^{ni} f(a_i…aₙ, a₀…a_{i−1})(1)
  for (std::size_t ti = 0; ti < tn; ++ti) {
    auto t = decode_tuple(ti, d, n);
    for (std::size_t a0 = 0; a0 < d; ++a0) {
      std::vector<std::size_t> full{a0};
      full.insert(full.end(), t.begin(), t.end());
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::size_t> rot(full.begin() + static_cast<std::ptrdiff_t>(i), full.end());
        rot.insert(rot.end(), full.begin(), full.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t col = encode_tuple(rot, d) * d;
        Scalar sg = sign(f, static_cast<long>(n * i));
        for (std::size_t k = 0; k < d; ++k)
          if (!a.unit()[k].is_zero()) b.add(ti * d + a0, col + k, sg * a.unit()[k]);
      }
    }
  }
  return std::move(b).build();
}

Cochain bar_B(const Algebra& a, const Bimodule& m, const Cochain& f) {
  if (!is_dual_of_regular(a, m))
    throw UnsupportedCoefficients("B̄ needs the dual bimodule A* as coefficients");
  if (f.degree == 0) throw MalformedInput("B̄ lowers degree; degree-0 input has no image");
  if (f.values.size() != a.dim() * ipow(a.dim(), f.degree))
    throw MalformedInput("cochain shape does not match its degree");
  return {f.degree - 1, a.dim(), bar_B_matrix(a, f.degree - 1).apply(f.values)};
}

Scalar phi_pairing(const Algebra& a, const Chain& z, const Cochain& f) {
  if (z.degree != f.degree) throw MalformedInput("pairing needs equal degrees");
  const std::size_t d = a.dim(), tn = ipow(d, z.degree);
  if (z.values.size() != d * tn || f.values.size() != d * tn || f.module_dim != d)
    throw MalformedInput("pairing arguments have the wrong shape");
  Scalar s = Scalar::zero(a.field());
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t t = 0; t < tn; ++t) {
      const Scalar& zv = z.values[x * tn + t];
      if (!zv.is_zero()) s += zv * f.values[t * d + x];
    }
  return s;
}

VerificationReport verify_lemma_2_1(const Algebra& a, std::size_t max_n, const Caps& caps) {
  VerificationReport rep("pairing and Connes B");
  const Bimodule reg = regular_bimodule(a);
  const Bimodule dual = dual_bimodule(a, reg);
  auto HH = homology_spaces(a, reg, max_n, caps);
  auto H = cohomology_spaces(a, dual, max_n, caps);

  Check adj{.name = "phi(Bz)(f) = phi(z)(B̄f)"};
  for (std::size_t n = 0; n + 1 <= max_n; ++n) {
    Matrix B = connes_B_matrix(a, n);
    Matrix Bbar = bar_B_matrix(a, n);
    for (std::size_t i = 0; i < HH[n].dim(); ++i) {
      Chain z{n, HH[n].representatives()[i]};
      Chain bz{n + 1, B.apply(z.values)};
      for (std::size_t j = 0; j < H[n + 1].dim(); ++j) {
        Cochain f{n + 1, a.dim(), H[n + 1].representatives()[j]};
        Cochain bf{n, a.dim(), Bbar.apply(f.values)};
        Scalar lhs = phi_pairing(a, bz, f), rhs = phi_pairing(a, z, bf);
        if (lhs != rhs)
          adj.fail(Witness{}
                       .set("z", "HH" + std::to_string(n) + "[" + std::to_string(i) + "]")
                       .set("f", class_name(n + 1, j))
                       .set("lhs", lhs.to_string())
                       .set("rhs", rhs.to_string()));
      }
    }
  }
  rep.add(std::move(adj));

  Check well{.name = "pairing vanishes on boundaries and coboundaries"};
  Check inj{.name = "phi injective"};
  Check iso{.name = "phi isomorphism"};
  for (std::size_t n = 0; n <= max_n; ++n) {
    const auto& zs = HH[n].representatives();
    const auto& fs = H[n].representatives();
    for (const auto& w : HH[n].image())
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (!phi_pairing(a, Chain{n, w}, Cochain{n, a.dim(), fs[j]}).is_zero())
          well.fail(Witness{}.set("degree", std::to_string(n)).set("f", class_name(n, j)));
    for (const auto& g : H[n].image())
      for (std::size_t i = 0; i < zs.size(); ++i)
        if (!phi_pairing(a, Chain{n, zs[i]}, Cochain{n, a.dim(), g}).is_zero())
          well.fail(Witness{}.set("degree", std::to_string(n)).set("z", std::to_string(i)));
    MatrixBuilder pm(a.field(), zs.size(), fs.size());
    for (std::size_t i = 0; i < zs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j)
        pm.add(i, j, phi_pairing(a, Chain{n, zs[i]}, Cochain{n, a.dim(), fs[j]}));
    std::size_t r = rank(std::move(pm).build());
    std::string dims = "degree " + std::to_string(n) + ": rank " + std::to_string(r) +
                       ", dim HH " + std::to_string(zs.size()) + ", dim H " +
                       std::to_string(fs.size());
    if (r != zs.size()) inj.fail(Witness{}.set("dims", dims));
    if (r != zs.size() || r != fs.size()) iso.fail(Witness{}.set("dims", dims));
    inj.note += (inj.note.empty() ? "" : "; ") + dims;
  }
  iso.note = inj.note;
  rep.add(std::move(well));
  rep.add(std::move(inj));
  rep.add(std::move(iso));
  return rep;
}

Cochain cup_psi(const StructuralMap& s, const Cochain& f, const Cochain& g,
                bool allow_unvalidated) {
  if (s.status != StructuralMap::Status::Pass && !allow_unvalidated)
    throw UnvalidatedStructuralMap("ψ '" + s.name + "' has not passed validation");
  const std::size_t d = s.algebra.dim(), m = s.module.dim();
  const std::size_t tp = ipow(d, f.degree), tq = ipow(d, g.degree);
  if (f.values.size() != m * tp || g.values.size() != m * tq)
    throw MalformedInput("cochain shape does not match the structural map");
  Cochain out = Cochain::zero(s.module.field, f.degree + g.degree, d, m);
  for (std::size_t t1 = 0; t1 < tp; ++t1)
    for (std::size_t t2 = 0; t2 < tq; ++t2) {
      const std::size_t base = (t1 * tq + t2) * m;
      for (std::size_t i = 0; i < m; ++i) {
        const Scalar& x = f.values[t1 * m + i];
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
          const Scalar& y = g.values[t2 * m + j];
          if (y.is_zero()) continue;
          Scalar c = x * y;
          for (std::size_t k = 0; k < m; ++k)
            if (!s.psi[i][j][k].is_zero()) out.values[base + k] += c * s.psi[i][j][k];
        }
      }
    }
  return out;
}

Cochain cup_product(const Algebra& a, const Cochain& f, const Cochain& g) {
  const std::size_t d = a.dim();
  const std::size_t tp = ipow(d, f.degree), tq = ipow(d, g.degree);
  if (f.values.size() != d * tp || g.values.size() != d * tq)
    throw MalformedInput("cup product needs cochains with values in A");
  Cochain out = Cochain::zero(a.field(), f.degree + g.degree, d, d);
  for (std::size_t t1 = 0; t1 < tp; ++t1)
    for (std::size_t t2 = 0; t2 < tq; ++t2) {
      Vector v = a.multiply(f.value(t1), g.value(t2));
      std::copy(v.begin(), v.end(),
                out.values.begin() + static_cast<std::ptrdiff_t>((t1 * tq + t2) * d));
    }
  return out;
}

Cochain circle_product(const Algebra& a, const Cochain& g, const Cochain& f) {
  const std::size_t d = a.dim(), p = f.degree, q = g.degree;
  if (f.module_dim != d || g.module_dim != d)
    throw UnsupportedCoefficients("the circle product needs coefficients in A");
  if (p + q == 0) throw MalformedInput("circle product of two degree-0 cochains");
  const std::size_t n = p + q - 1;
  Cochain out = Cochain::zero(a.field(), n, d, d);
  for (std::size_t ti = 0; ti < ipow(d, n); ++ti) {
    auto t = decode_tuple(ti, d, n);
    Vector acc = zero_vector(a.field(), d);
    for (std::size_t i = 1; i <= q; ++i) {
      Vector v = f.value(encode_tuple(std::span(t).subspan(i - 1, p), d));
      Scalar sg = sign(a.field(), static_cast<long>((i - 1) * (p + 1)));  // (p−1) ≡ (p+1)
      for (std::size_t k = 0; k < d; ++k) {
        if (v[k].is_zero()) continue;
        std::vector<std::size_t> u(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
        u.push_back(k);
        u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i - 1 + p), t.end());
        add_scaled(acc, sg * v[k], g.value(encode_tuple(u, d)));
      }
    }
    std::copy(acc.begin(), acc.end(), out.values.begin() + static_cast<std::ptrdiff_t>(ti * d));
  }
  return out;
}

Cochain circle_bracket(const Algebra& a, const Cochain& f, const Cochain& g) {
  Cochain fg = circle_product(a, f, g);  // f ∘̄ g
  Cochain gf = circle_product(a, g, f);
  Scalar s = sign(a.field(), static_cast<long>((f.degree + 1) * (g.degree + 1)));
  add_scaled(fg.values, -s, gf.values);
  return fg;
}

BVCalculus::BVCalculus(std::string name, std::vector<CohomologySpace> spaces,
                       std::size_t module_dim, Product product, Operator delta, Vector unit)
    : name_(std::move(name)), spaces_(std::move(spaces)), module_dim_(module_dim),
      product_(std::move(product)), delta_(std::move(delta)), unit_(std::move(unit)) {
  if (spaces_.empty()) throw MalformedInput("calculus needs at least degree 0");
}

const CohomologySpace& BVCalculus::space(std::size_t n) const {
  if (n >= spaces_.size())
    throw CapExceeded("degree " + std::to_string(n) + " is beyond the computed range " +
                      std::to_string(max_degree()));
  return spaces_[n];
}

Cochain BVCalculus::representative(const CohomologyClass& c) const {
  return {c.degree, module_dim_, space(c.degree).representative(c)};
}

CohomologyClass BVCalculus::reduce(const Cochain& f) const {
  return space(f.degree).reduce(f.values);
}

CohomologyClass BVCalculus::zero(std::size_t n) const {
  return {n, zero_vector(field(), space(n).dim())};
}

std::optional<CohomologyClass> BVCalculus::unit() const {
  if (!space(0).is_cycle(unit_)) return std::nullopt;
  return space(0).reduce(unit_);
}

std::optional<Cochain> BVCalculus::delta_cochain(const Cochain& f) const {
  if (f.degree == 0) return std::nullopt;
  return delta_(f);
}

std::optional<Cochain> BVCalculus::bracket_cochain(const Cochain& f, const Cochain& g,
                                                   BracketConvention c) const {
  const long p = static_cast<long>(f.degree), q = static_cast<long>(g.degree);
  if (p + q == 0) return std::nullopt;
  const Field& k = field();
  Cochain out = *delta_cochain(product_(f, g));
  if (auto df = delta_cochain(f)) add_scaled(out.values, -Scalar::one(k), product_(*df, g).values);
  if (auto dg = delta_cochain(g)) add_scaled(out.values, -sign(k, p), product_(f, *dg).values);
  Scalar s = c == BracketConvention::Lemma32 ? sign(k, (p - 1) * q) : sign(k, p + 1);
  for (auto& x : out.values) x *= s;
  return out;
}

CohomologyClass BVCalculus::product(const CohomologyClass& f, const CohomologyClass& g) const {
  return reduce(product_(representative(f), representative(g)));
}

std::optional<CohomologyClass> BVCalculus::delta(const CohomologyClass& f) const {
  auto d = delta_cochain(representative(f));
  if (!d) return std::nullopt;
  return reduce(*d);
}

std::optional<CohomologyClass> BVCalculus::bracket(const CohomologyClass& f,
                                                   const CohomologyClass& g,
                                                   BracketConvention c) const {
  auto b = bracket_cochain(representative(f), representative(g), c);
  if (!b) return std::nullopt;
  return reduce(*b);
}

BVCalculus psi_calculus(const StructuralMap& s, std::size_t max_degree, const Caps& caps,
                        bool allow_unvalidated) {
  if (!is_dual_of_regular(s.algebra, s.module))
    throw UnsupportedCoefficients("the ψ-calculus lives on A* coefficients");
  if (s.status != StructuralMap::Status::Pass && !allow_unvalidated)
    throw UnvalidatedStructuralMap("ψ '" + s.name + "' has not passed validation");
  const Algebra& a = s.algebra;
  auto spaces = cohomology_spaces(a, s.module, max_degree, caps);
  auto bars = std::make_shared<std::vector<Matrix>>();
  for (std::size_t n = 0; n <= max_degree; ++n) bars->push_back(bar_B_matrix(a, n));
  auto smap = std::make_shared<const StructuralMap>(s);
  return BVCalculus(
      "H(A,A*) with psi " + s.name, std::move(spaces), a.dim(),
      [smap](const Cochain& f, const Cochain& g) { return cup_psi(*smap, f, g, true); },
      [smap, bars](const Cochain& f) {
        const std::size_t n = f.degree - 1;
        const Matrix m = n < bars->size() ? (*bars)[n] : bar_B_matrix(smap->algebra, n);
        return Cochain{n, f.module_dim, m.apply(f.values)};
      },
      s.unit);
}

namespace {

using Term = std::optional<CohomologyClass>;

// Σ c·term, treating nullopt as zero; empty result means all terms vanish.
Vector combine(const Field& f, std::initializer_list<std::pair<Scalar, Term>> terms) {
  Vector out;
  for (const auto& [c, t] : terms) {
    if (!t) continue;
    if (out.empty()) out = zero_vector(f, t->coords.size());
    if (out.size() != t->coords.size()) throw Inconsistency("class combination across degrees");
    add_scaled(out, c, t->coords);
  }
  return out;
}

std::string show(const Term& t) {
  return t ? format_vector(t->coords) : std::string("0 (negative degree)");
}

struct Basis {
  std::vector<CohomologyClass> classes;
  std::vector<std::string> names;
};

Basis basis_classes(const BVCalculus& calc, std::size_t max_n) {
  Basis b;
  for (std::size_t n = 0; n <= std::min(max_n, calc.max_degree()); ++n)
    for (std::size_t j = 0; j < calc.space(n).dim(); ++j) {
      b.classes.push_back(calc.space(n).basis_class(j));
      b.names.push_back(class_name(n, j));
    }
  return b;
}

// Runs `body`; cochains that fail to be cocycles become failures.
template <class F>
void guarded(Check& c, Witness w, F&& body) {
  try {
    body();
  } catch (const NotACocycle& e) {
    c.fail(w.set("error", e.what()));
  }
}

}  // namespace

VerificationReport verify_gerstenhaber_bv(const BVCalculus& calc, BracketConvention conv,
                                          const SuiteBudget& budget) {
  VerificationReport rep(calc.name());
  const Field k = calc.field();
  const std::size_t top = std::min(budget.max_degree, calc.max_degree());
  const Basis B = basis_classes(calc, top);
  const std::size_t N = B.classes.size();
  auto deg = [&](std::size_t i) { return static_cast<long>(B.classes[i].degree); };
  const long top_l = static_cast<long>(top);
  const std::string conv_s = convention_name(conv);

  Check comm{.name = "cup graded commutative"};
  Check assoc{.name = "cup associative"};
  Check unit{.name = "unit class acts as identity"};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (deg(i) + deg(j) > std::min(top_l, static_cast<long>(budget.pair_degree))) continue;
      guarded(comm, Witness{}.set("F", B.names[i]).set("G", B.names[j]), [&] {
        Term fg = calc.product(B.classes[i], B.classes[j]);
        Term gf = calc.product(B.classes[j], B.classes[i]);
        if (!is_zero(combine(k, {{Scalar::one(k), fg}, {-sign(k, deg(i) * deg(j)), gf}})))
          comm.fail(Witness{}
                        .set("F", B.names[i])
                        .set("G", B.names[j])
                        .set("F∪G", show(fg))
                        .set("±G∪F", show(gf)));
      });
    }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t l = 0; l < N; ++l) {
        if (deg(i) + deg(j) + deg(l) > std::min(top_l, static_cast<long>(budget.triple_degree)))
          continue;
        guarded(assoc, Witness{}.set("F", B.names[i]).set("G", B.names[j]).set("H", B.names[l]),
                [&] {
                  Term lhs = calc.product(calc.product(B.classes[i], B.classes[j]), B.classes[l]);
                  Term rhs = calc.product(B.classes[i], calc.product(B.classes[j], B.classes[l]));
                  if (lhs->coords != rhs->coords)
                    assoc.fail(Witness{}
                                   .set("F", B.names[i])
                                   .set("G", B.names[j])
                                   .set("H", B.names[l])
                                   .set("(FG)H", show(lhs))
                                   .set("F(GH)", show(rhs)));
                });
      }
  Term one;
  try {
    one = calc.unit();
  } catch (const NotACocycle&) {
  }
  if (!one) {
    unit.fail(Witness{}.set("unit", "not a degree-0 cocycle"));
  } else {
    for (std::size_t i = 0; i < N; ++i)
      guarded(unit, Witness{}.set("F", B.names[i]), [&] {
        Term l = calc.product(*one, B.classes[i]), r = calc.product(B.classes[i], *one);
        if (l->coords != B.classes[i].coords || r->coords != B.classes[i].coords)
          unit.fail(Witness{}.set("F", B.names[i]).set("1∪F", show(l)).set("F∪1", show(r)));
      });
  }
  rep.add(std::move(comm));
  rep.add(std::move(assoc));
  rep.add(std::move(unit));

  Check sq{.name = "operator squares to zero on cohomology"};
  for (std::size_t i = 0; i < N; ++i) {
    if (deg(i) < 2) continue;
    guarded(sq, Witness{}.set("F", B.names[i]), [&] {
      Term once = calc.delta(B.classes[i]);
      Term twice = calc.delta(*once);
      if (!is_zero(twice->coords))
        sq.fail(Witness{}.set("F", B.names[i]).set("D(D(F))", show(twice)));
    });
  }
  rep.add(std::move(sq));

  const long pair_cap = std::min(top_l + 1, static_cast<long>(budget.pair_degree));
  const long triple_cap = std::min(top_l + 1, static_cast<long>(budget.triple_degree));
  Check anti{.name = "bracket antisymmetry", .convention = conv_s,
             .note = "[f,g] = -(-1)^((|f|-1)(|g|-1)) [g,f]"};
  Check literal{.name = "bracket antisymmetry (literal sign)", .informational = true,
                .convention = conv_s, .note = "[f,g] = (-1)^((|f|-1)(|g|-1)) [g,f]"};
  Check with_unit{.name = "bracket with the unit vanishes", .convention = conv_s};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (deg(i) + deg(j) > pair_cap) continue;
      Witness w;
      w.set("F", B.names[i]).set("G", B.names[j]);
      guarded(anti, w, [&] {
        Term fg = calc.bracket(B.classes[i], B.classes[j], conv);
        Term gf = calc.bracket(B.classes[j], B.classes[i], conv);
        Scalar s = sign(k, (deg(i) - 1) * (deg(j) - 1));
        Witness ww = w;
        ww.set("[F,G]", show(fg)).set("[G,F]", show(gf));
        if (!is_zero(combine(k, {{Scalar::one(k), fg}, {s, gf}}))) anti.fail(ww);
        if (!is_zero(combine(k, {{Scalar::one(k), fg}, {-s, gf}}))) literal.fail(ww);
      });
    }
  if (one)
    for (std::size_t j = 0; j < N; ++j) {
      if (deg(j) > pair_cap) continue;
      guarded(with_unit, Witness{}.set("G", B.names[j]), [&] {
        Term b = calc.bracket(*one, B.classes[j], conv);
        if (b && !is_zero(b->coords))
          with_unit.fail(Witness{}.set("G", B.names[j]).set("[1,G]", show(b)));
      });
    }
  rep.add(std::move(anti));
  rep.add(std::move(literal));
  rep.add(std::move(with_unit));

  Check jac{.name = "Jacobi identity", .convention = conv_s,
            .note = "[f,[g,h]] = [[f,g],h] + (-1)^((|f|-1)(|g|-1)) [g,[f,h]]"};
  Check poi{.name = "Poisson identity", .convention = conv_s,
            .note = "[f,g∪h] = [f,g]∪h + (-1)^((|f|-1)|g|) g∪[f,h]"};
  auto br = [&](const Term& x, const Term& y) -> Term {
    if (!x || !y) return std::nullopt;
    return calc.bracket(*x, *y, conv);
  };
  auto cup = [&](const Term& x, const Term& y) -> Term {
    if (!x || !y) return std::nullopt;
    return calc.product(*x, *y);
  };
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t l = 0; l < N; ++l) {
        const long p = deg(i), q = deg(j), r = deg(l);
        if (p + q + r > triple_cap) continue;
        Term f = B.classes[i], g = B.classes[j], h = B.classes[l];
        Witness w;
        w.set("F", B.names[i]).set("G", B.names[j]).set("H", B.names[l]);
        guarded(jac, w, [&] {
          Term lhs = br(f, br(g, h));
          Term r1 = br(br(f, g), h);
          Term r2 = br(g, br(f, h));
          Vector diff = combine(k, {{Scalar::one(k), lhs},
                                    {-Scalar::one(k), r1},
                                    {-sign(k, (p - 1) * (q - 1)), r2}});
          if (!is_zero(diff)) {
            Witness ww = w;
            jac.fail(ww.set("lhs", show(lhs)).set("[[F,G],H]", show(r1)).set("[G,[F,H]]", show(r2)));
          }
        });
        if (q + r > top_l) continue;
        guarded(poi, w, [&] {
          Term lhs = br(f, cup(g, h));
          Term r1 = cup(br(f, g), h);
          Term r2 = cup(g, br(f, h));
          Vector diff = combine(k, {{Scalar::one(k), lhs},
                                    {-Scalar::one(k), r1},
                                    {-sign(k, (p - 1) * q), r2}});
          if (!is_zero(diff)) {
            Witness ww = w;
            poi.fail(ww.set("lhs", show(lhs)).set("[F,G]∪H", show(r1)).set("G∪[F,H]", show(r2)));
          }
        });
      }
  rep.add(std::move(jac));
  rep.add(std::move(poi));
  return rep;
}

VerificationReport verify_psi_structure(StructuralMap& s, BracketConvention conv,
                                        const SuiteBudget& budget, const Caps& caps,
                                        bool allow_unvalidated) {
  VerificationReport rep("psi structure " + s.name);
  rep.merge(validate_structural_map(s), "structural map: ");
  const bool valid = s.status == StructuralMap::Status::Pass;
  if (!valid && !allow_unvalidated) {
    rep.add_label("downstream identities skipped: ψ failed validation");
    return rep;
  }
  if (!valid) rep.add_label("unvalidated ψ");
  const Algebra& a = s.algebra;
  const Field k = a.field();
  const std::size_t top = budget.max_degree;
  BVCalculus calc = psi_calculus(s, top, caps, true);

  Check leib{.name = "Leibniz rule for cup_psi (cochain level)"};
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> val(-3, 3);
  auto random_cochain = [&](std::size_t n) {
    Cochain c = Cochain::zero(k, n, a.dim(), a.dim());
    for (auto& x : c.values) x = Scalar::from_integer(k, val(rng));
    return c;
  };
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; p + q <= top; ++q)
      for (int trial = 0; trial < 3; ++trial) {
        Cochain f = random_cochain(p), g = random_cochain(q);
        Cochain lhs = coboundary(a, s.module, cup_psi(s, f, g, true));
        Cochain rhs = cup_psi(s, coboundary(a, s.module, f), g, true);
        add_scaled(rhs.values, sign(k, static_cast<long>(p)),
                   cup_psi(s, f, coboundary(a, s.module, g), true).values);
        if (lhs != rhs)
          leib.fail(Witness{}.set("degrees", "(" + std::to_string(p) + "," + std::to_string(q) + ")"));
      }
  rep.add(std::move(leib));

  Check anti{.name = "B̄ anticommutes with d"};
  for (std::size_t n = 0; n + 1 <= top; ++n) {
    // on C^{n+1}: B̄ d + d B̄ = 0
    Matrix lhs = bar_B_matrix(a, n + 1) * coboundary_matrix(a, s.module, n + 1) +
                 coboundary_matrix(a, s.module, n) * bar_B_matrix(a, n);
    if (!lhs.is_zero()) anti.fail(Witness{}.set("degree", std::to_string(n + 1)));
  }
  rep.add(std::move(anti));

  Check cyc{.name = "B̄ maps cocycles to cocycles"};
  Check bnd{.name = "B̄ maps coboundaries to coboundaries"};
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix Bb = bar_B_matrix(a, n - 1);
    for (std::size_t j = 0; j < calc.space(n).dim(); ++j)
      if (!calc.space(n - 1).is_cycle(Bb.apply(calc.space(n).representatives()[j])))
        cyc.fail(Witness{}.set("F", class_name(n, j)));
    for (const auto& im : calc.space(n).image()) {
      Vector v = Bb.apply(im);
      if (!calc.space(n - 1).is_cycle(v) || !calc.space(n - 1).preimage(v))
        bnd.fail(Witness{}.set("degree", std::to_string(n)));
    }
  }
  rep.add(std::move(cyc));
  rep.add(std::move(bnd));

  rep.merge(verify_gerstenhaber_bv(calc, conv, budget));
  return rep;
}

}  // namespace hochbv
