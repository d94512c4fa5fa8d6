#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "hochbv/bv.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/fleet.hpp"
#include "hochbv/quiver.hpp"

using namespace hochbv;
using testing::qvec;

namespace {

const Field Q = Field::rationals();

// ψ(Z u ⊗ Z v) = Z(uv) for ⟨1,x⟩ = 1: 1^∨ = Z(x), x^∨ = Z(1).
StructuralMap dual_numbers_symmetric() {
  Algebra a = fleet::dual_numbers();
  Bimodule m = dual_bimodule(a, regular_bimodule(a));
  std::vector<std::vector<Vector>> psi = {{qvec({0, 0}), qvec({1, 0})},
                                          {qvec({1, 0}), qvec({0, 1})}};
  return StructuralMap{.name = "symmetric", .algebra = a, .module = m, .psi = psi,
                       .unit = qvec({0, 1})};
}

Cochain random_cochain(std::mt19937& rng, std::size_t n, std::size_t d, std::size_t m) {
  std::uniform_int_distribution<long> val(-4, 4);
  Cochain c = Cochain::zero(Q, n, d, m);
  for (auto& x : c.values) x = Scalar(val(rng));
  return c;
}

Chain random_chain(std::mt19937& rng, std::size_t n, std::size_t d) {
  std::uniform_int_distribution<long> val(-4, 4);
  Chain z{n, zero_vector(Q, d * ipow(d, n))};
  for (auto& x : z.values) x = Scalar(val(rng));
  return z;
}

Scalar sgn(long e) { return Scalar(e % 2 != 0 ? -1L : 1L); }

}  // namespace

TEST_CASE("conventions parse") {
  CHECK(parse_convention("lemma-3-2") == BracketConvention::Lemma32);
  CHECK(parse_convention("bv-definition") == BracketConvention::BvDefinition);
  CHECK_FALSE(parse_convention("other"));
  CHECK(convention_name(BracketConvention::BvDefinition) == "bv-definition");
}

TEST_CASE("loop monomial psi is not balanced") {
  StructuralMap s = monomial_psi(fleet::loop_aa());
  auto rep = validate_structural_map(s);
  CHECK(s.status == StructuralMap::Status::Fail);
  const Check* bal = rep.find("balanced");
  REQUIRE(bal);
  CHECK_FALSE(bal->pass);
  bool found = false;
  for (const auto& w : bal->witnesses)
    if (*w.get("f") == "a^∨" && *w.get("a") == "a" && *w.get("g") == "e^∨") {
      found = true;
      CHECK(*w.get("psi(f.a, g)") == "e^∨");
      CHECK(*w.get("psi(f, a.g)") == "0");
    }
  CHECK(found);
}

TEST_CASE("A2 monomial psi fails validation") {
  StructuralMap s = monomial_psi(fleet::a2());
  CHECK_FALSE(validate_structural_map(s).passed());
  CHECK(s.status == StructuralMap::Status::Fail);
  Cochain f = Cochain::zero(Q, 0, 3, 3);
  CHECK_THROWS_AS(cup_psi(s, f, f), UnvalidatedStructuralMap);
  CHECK_NOTHROW(cup_psi(s, f, f, true));
  CHECK_THROWS_AS(psi_calculus(s, 1), UnvalidatedStructuralMap);
}

TEST_CASE("symmetric psi on dual numbers validates") {
  StructuralMap s = dual_numbers_symmetric();
  CHECK(validate_structural_map(s).passed());
  CHECK(s.status == StructuralMap::Status::Pass);
  StructuralMap bad = s;
  bad.unit = qvec({1, 0});
  CHECK_FALSE(validate_structural_map(bad).passed());
}

TEST_CASE("bar B small degrees") {
  Algebra a = fleet::dual_numbers();
  Bimodule dual = dual_bimodule(a, regular_bimodule(a));
  // degree 1 -> 0: B̄f(a0) = f(a0)(1)
  Cochain f{1, 2, qvec({5, 7, 3, 4})};  // f(1) = 5·1^∨ + 7x^∨, f(x) = 3·1^∨ + 4x^∨
  CHECK(bar_B(a, dual, f).values == qvec({5, 3}));
  CHECK(bar_B(a, dual, f).degree == 0);
  // degree 2 -> 1: B̄f(a1)(a0) = f(a0,a1)(1) − f(a1,a0)(1)
  std::mt19937 rng(7);
  Cochain g = random_cochain(rng, 2, 2, 2);
  Cochain bg = bar_B(a, dual, g);
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t a0 = 0; a0 < 2; ++a0)
      CHECK(bg.values[a1 * 2 + a0] == g.value(a0 * 2 + a1)[0] - g.value(a1 * 2 + a0)[0]);
  CHECK_THROWS_AS(bar_B(a, regular_bimodule(a), f), UnsupportedCoefficients);
  CHECK_THROWS_AS(bar_B(a, dual, Cochain::zero(Q, 0, 2, 2)), MalformedInput);
}

TEST_CASE("pairing") {
  Algebra a = fleet::dual_numbers();
  // z = x⊗1, f(1) = 2·1^∨ + 3x^∨: φ(z)(f) = f(1)(x) = 3
  Chain z{1, qvec({0, 0, 1, 0})};
  Cochain f{1, 2, qvec({2, 3, 0, 0})};
  CHECK(phi_pairing(a, z, f) == Scalar(3L));
  CHECK_THROWS_AS(phi_pairing(a, Chain{0, qvec({1, 0})}, f), MalformedInput);
}

TEST_CASE("bar B is the transpose of B and d of b") {
  std::mt19937 rng(11);
  for (const Algebra& a : {fleet::dual_numbers(), fleet::group_z2(),
                           path_algebra(fleet::a2()), fleet::quantum_exterior(2)}) {
    const std::size_t d = a.dim();
    Bimodule reg = regular_bimodule(a), dual = dual_bimodule(a, reg);
    for (std::size_t n = 0; n <= 2; ++n) {
      Chain z = random_chain(rng, n, d);
      Cochain f = random_cochain(rng, n + 1, d, d);
      CHECK(phi_pairing(a, connes_B(a, reg, z), f) ==
            phi_pairing(a, z, bar_B(a, dual, f)));
      if (n >= 1) {
        Chain w = random_chain(rng, n, d);
        Cochain g = random_cochain(rng, n - 1, d, d);
        CHECK(phi_pairing(a, boundary(a, reg, w), g) ==
              phi_pairing(a, w, coboundary(a, dual, g)));
      }
    }
  }
}

TEST_CASE("pairing and B on homology") {
  for (const Algebra& a : {fleet::dual_numbers(), path_algebra(fleet::a2()), fleet::group_z2()}) {
    auto rep = verify_lemma_2_1(a, 2);
    CHECK_MESSAGE(rep.passed(), rep.to_text());
  }
}

TEST_CASE("cup product and circle product on C(A,A)") {
  std::mt19937 rng(3);
  for (const Algebra& a : {fleet::dual_numbers(), fleet::quantum_exterior(2), path_algebra(fleet::a2())}) {
    const std::size_t d = a.dim();
    Bimodule reg = regular_bimodule(a);
    for (std::size_t p = 0; p <= 2; ++p)
      for (std::size_t q = 0; q + p <= 2; ++q) {
        Cochain f = random_cochain(rng, p, d, d), g = random_cochain(rng, q, d, d);
        // Leibniz
        Cochain lhs = coboundary(a, reg, cup_product(a, f, g));
        Cochain rhs = cup_product(a, coboundary(a, reg, f), g);
        add_scaled(rhs.values, sgn(long(p)), cup_product(a, f, coboundary(a, reg, g)).values);
        CHECK(lhs == rhs);
        if (p + q == 0) continue;
        // f∪g − (−1)^{pq} g∪f = dg∘̄f + (−1)^p d(g∘̄f) + (−1)^{p−1} g∘̄df
        Cochain comm = cup_product(a, f, g);
        add_scaled(comm.values, -sgn(long(p * q)), cup_product(a, g, f).values);
        Cochain h = circle_product(a, coboundary(a, reg, g), f);
        add_scaled(h.values, sgn(long(p)), coboundary(a, reg, circle_product(a, g, f)).values);
        add_scaled(h.values, sgn(long(p) - 1), circle_product(a, g, coboundary(a, reg, f)).values);
        CHECK(comm == h);
      }
  }
}

TEST_CASE("circle product small case") {
  Algebra a = fleet::dual_numbers();
  // g ∘̄ f with |g| = 1, |f| = 0: (g∘̄f) = g(f())
  Cochain g{1, 2, qvec({1, 2, 0, 5})};  // g(1) = 1 + 2x, g(x) = 5x
  Cochain f{0, 2, qvec({3, 1})};        // f = 3 + x
  CHECK(circle_product(a, g, f).values == qvec({3, 11}));
  CHECK_THROWS_AS(circle_product(a, f, f), MalformedInput);
  Cochain m{1, 2, qvec({1, 0, 0, 0})};
  CHECK_THROWS_AS(circle_product(a, Cochain{1, 3, zero_vector(Q, 6)}, m),
                  UnsupportedCoefficients);
}

TEST_CASE("psi calculus on dual numbers") {
  StructuralMap s = dual_numbers_symmetric();
  validate_structural_map(s);
  BVCalculus calc = psi_calculus(s, 2);
  auto one = calc.unit();
  REQUIRE(one);
  for (std::size_t n = 0; n <= 2; ++n)
    for (std::size_t j = 0; j < calc.space(n).dim(); ++j) {
      auto c = calc.space(n).basis_class(j);
      CHECK(calc.product(*one, c) == c);
      auto b = calc.bracket(*one, c, BracketConvention::Lemma32);
      if (n == 0) CHECK_FALSE(b);
      else CHECK(is_zero(b->coords));
    }
  auto c0 = calc.space(0).basis_class(0);
  CHECK_FALSE(calc.bracket(c0, c0, BracketConvention::BvDefinition));
  CHECK_FALSE(calc.delta(c0));

  for (auto conv : {BracketConvention::Lemma32, BracketConvention::BvDefinition}) {
    auto rep = verify_psi_structure(s, conv, {});
    CHECK_MESSAGE(rep.passed(), rep.to_text());
  }
}

TEST_CASE("psi suite on a failing map") {
  StructuralMap s = monomial_psi(fleet::loop_aa());
  auto skipped = verify_psi_structure(s, BracketConvention::Lemma32, {});
  CHECK_FALSE(skipped.passed());
  CHECK_FALSE(skipped.find("Jacobi identity"));
  auto forced = verify_psi_structure(s, BracketConvention::Lemma32, {}, {}, true);
  CHECK_FALSE(forced.passed());
  CHECK(forced.find("Jacobi identity"));
  bool labelled = false;
  for (const auto& l : forced.labels()) labelled |= l == "unvalidated ψ";
  CHECK(labelled);
}
