#include "doctest.h"
#include "helpers.hpp"
#include "hochbv/algebra.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/fleet.hpp"

using namespace hochbv;
using testing::qmat;
using testing::qvec;

namespace {
Scalar Q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }
}

TEST_CASE("validate_algebra on small tables") {
  CHECK(validate_algebra(fleet::dual_numbers()).passed());
  CHECK(validate_algebra(fleet::group_z2()).passed());  // x·x = 1
  CHECK(validate_algebra(fleet::quantum_exterior(2)).passed());
  CHECK(validate_algebra(fleet::product_qq()).passed());

  // x·x = y, x·y = x, y·x = 0: (xx)x = 0 but x(xx) = x
  auto bad = make_algebra(Field::rationals(), {"1", "x", "y"}, qvec({1, 0, 0}),
                          {{0, 0, 0, Q(1)}, {0, 1, 1, Q(1)}, {0, 2, 2, Q(1)}, {1, 0, 1, Q(1)},
                           {2, 0, 2, Q(1)}, {1, 1, 2, Q(1)}, {1, 2, 1, Q(1)}});
  auto rep = validate_algebra(bad);
  CHECK_FALSE(rep.passed());
  const Check* assoc = rep.find("associativity");
  REQUIRE(assoc);
  REQUIRE_FALSE(assoc->witnesses.empty());
  CHECK(*assoc->witnesses[0].get("triple") == "(x,x,x)");
  CHECK(*assoc->witnesses[0].get("(ab)c") == "0");
  CHECK(*assoc->witnesses[0].get("a(bc)") == "x");
}

TEST_CASE("malformed structure constants are rejected") {
  CHECK_THROWS_AS(make_algebra(Field::rationals(), {"1"}, qvec({1}), {{0, 0, 1, Q(1)}}),
                  MalformedInput);
  CHECK_THROWS_AS(make_algebra(Field::rationals(), {"1"}, {Scalar::residue(5, 1)},
                               {{0, 0, 0, Q(1)}}),
                  FieldMismatch);
  CHECK_THROWS_AS(make_algebra(Field::rationals(), {"1", "1"}, qvec({1, 0}), {}), MalformedInput);
}

TEST_CASE("regular bimodule") {
  auto q = regular_bimodule(fleet::rationals());
  CHECK(q.left[0] == qmat({{1}}));
  CHECK(q.right[0] == qmat({{1}}));

  auto a = fleet::dual_numbers();
  auto m = regular_bimodule(a);
  CHECK(m.left[1] == qmat({{0, 0}, {1, 0}}));  // 1 ↦ x, x ↦ 0
  CHECK(validate_bimodule(a, m).passed());

  auto p = path_algebra(fleet::a2());
  auto r = regular_bimodule(p);
  std::size_t e1 = p.index_of("e1"), arrow = p.index_of("a");
  CHECK(r.left[arrow].apply(p.basis_vector(e1)) == p.basis_vector(arrow));
  CHECK(is_zero(r.left[e1].apply(p.basis_vector(arrow))));
}

TEST_CASE("dual bimodule") {
  auto a = fleet::dual_numbers();
  auto reg = regular_bimodule(a);
  auto dual = dual_bimodule(a, reg);
  CHECK(dual.labels == std::vector<std::string>{"1^∨", "x^∨"});
  // x·x^∨ = 1^∨
  CHECK(dual.left[1].apply(qvec({0, 1})) == qvec({1, 0}));
  CHECK(validate_bimodule(a, dual).passed());
  auto twice = dual_bimodule(a, dual);
  CHECK(twice.same_actions(reg));

  auto q = dual_bimodule(fleet::rationals(), regular_bimodule(fleet::rationals()));
  CHECK(q.left[0] == qmat({{1}}));
  for (const auto& alg : {fleet::quantum_exterior(2), path_algebra(fleet::a2()), fleet::product_qq()})
    CHECK(validate_bimodule(alg, dual_bimodule(alg, regular_bimodule(alg))).passed());
}

TEST_CASE("twisted bimodule") {
  auto a = fleet::product_qq();
  auto id = twisted_bimodule(a, {Matrix::identity(a.field(), 2)});
  CHECK(id.same_actions(regular_bimodule(a)));
  auto sw = twisted_bimodule(a, {fleet::product_qq_swap()});
  CHECK(sw.right[0] == a.right_multiplication(qvec({0, 1})));
  CHECK(validate_bimodule(a, sw).passed());

  CHECK_THROWS_AS(twisted_bimodule(a, {qmat({{1, 1}, {0, 1}})}), InvalidAutomorphism);
  CHECK_THROWS_AS(twisted_bimodule(a, {qmat({{1, 0}, {1, 0}})}), InvalidAutomorphism);
}

TEST_CASE("degree-zero invariants") {
  CHECK(h_zero_invariants(fleet::dual_numbers(), regular_bimodule(fleet::dual_numbers())).size() == 2);
  auto p = path_algebra(fleet::a2());
  auto inv = h_zero_invariants(p, regular_bimodule(p));
  REQUIRE(inv.size() == 1);
  CHECK(inv[0] == p.unit());
  auto a = fleet::dual_numbers();
  CHECK(h_zero_invariants(a, dual_bimodule(a, regular_bimodule(a))).size() == 2);
}

TEST_CASE("endomorphism validation") {
  auto a = fleet::quantum_exterior(2);
  // diag(1, −2, −1/2, 1) scales x and y oppositely, so it is multiplicative
  std::vector<std::vector<Scalar>> rows{{Q(1), Q(0), Q(0), Q(0)},
                                        {Q(0), Q(-2), Q(0), Q(0)},
                                        {Q(0), Q(0), Q(-1, 2), Q(0)},
                                        {Q(0), Q(0), Q(0), Q(1)}};
  CHECK(validate_endomorphism(a, {Matrix::from_rows(a.field(), rows)}).passed());
  rows[3][3] = Q(2);
  CHECK_FALSE(validate_endomorphism(a, {Matrix::from_rows(a.field(), rows)}).passed());
}
