#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hochbv/bv.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/fleet.hpp"
#include "hochbv/io.hpp"

using namespace hochbv;

namespace {

std::string data(const std::string& name) { return std::string(HOCHBV_DATA_DIR) + "/" + name; }

void same_algebra(const Algebra& x, const Algebra& y) {
  REQUIRE(x.dim() == y.dim());
  CHECK(x.field() == y.field());
  CHECK(x.labels() == y.labels());
  CHECK(x.unit() == y.unit());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j) CHECK(x.product(i, j) == y.product(i, j));
}

int parse_line(std::string_view text) {
  try {
    parse_input(text, "t");
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("field names") {
  CHECK(parse_field("rational").is_rational());
  CHECK(parse_field("Q").is_rational());
  CHECK(parse_field("prime 7") == Field::prime(7));
  CHECK(parse_field("prime:7") == Field::prime(7));
  CHECK(parse_field("F_7") == Field::prime(7));
  CHECK(parse_field("7") == Field::prime(7));
  CHECK_THROWS_AS(parse_field("prime 8"), MalformedInput);
  CHECK_THROWS_AS(parse_field("reals"), MalformedInput);
}

TEST_CASE("data files match the built-in algebras") {
  same_algebra(load_input(data("rationals.alg")).algebra, fleet::rationals());
  same_algebra(load_input(data("dual_numbers.alg")).algebra, fleet::dual_numbers());
  same_algebra(load_input(data("group_z2.alg")).algebra, fleet::group_z2());
  same_algebra(load_input(data("product_qq.alg")).algebra, fleet::product_qq());
  auto qe = load_input(data("quantum_exterior_q2.alg"));
  same_algebra(qe.algebra, fleet::quantum_exterior(2));
  REQUIRE(qe.form);
  CHECK(*qe.form == fleet::quantum_exterior_form(2));
  CHECK(*load_input(data("dual_numbers.alg")).form == fleet::dual_numbers_form());

  auto loop = load_input(data("loop_aa.quiver"));
  REQUIRE(loop.quiver);
  same_algebra(loop.algebra, path_algebra(fleet::loop_aa()));
  same_algebra(load_input(data("a2.quiver")).algebra, path_algebra(fleet::a2()));
  CHECK_FALSE(load_input(data("a2.quiver")).form);
}

TEST_CASE("field override reduces the entries") {
  auto qe = load_input(data("quantum_exterior_q2.alg"), Field::prime(5));
  same_algebra(qe.algebra, change_field(fleet::quantum_exterior(2), Field::prime(5)));
  CHECK(qe.form->field() == Field::prime(5));
  CHECK_THROWS_AS(load_input(data("quantum_exterior_q2.alg"), Field::prime(2)), MalformedInput);
  CHECK_THROWS_AS(parse_input("[field] prime 3\n[basis] 1\n[unit] 1*1\n[mult] 1 1 1 1\n", "t",
                              Field::prime(5)),
                  MalformedInput);
}

TEST_CASE("parse errors carry a position") {
  try {
    load_input(data("bad_relation.quiver"));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
  CHECK(parse_line("[basis] 1 x\n[unit] 1*1\n[mult]\n1 1 1 1\n1 y x 1\n") == 5);
  CHECK(parse_line("[basis] 1\n[unit] 1*1\n[mult]\n1 1 1 1\n1 1 1 2\n") == 5);
  CHECK(parse_line("[basis] 1\n[unit] 1*1\n[mult] 1 1 1 one\n") == 3);
  CHECK(parse_line("[bogus]\n") == 1);
  CHECK(parse_line("[vertices] 1\n[arrow] a 1 2\n") == 2);
  CHECK_THROWS_AS(parse_input("[basis] 1\n[unit] 1*1\n[mult] 1 1 1 1\n[form] 1 2\n", "t"),
                  MalformedInput);
  CHECK_THROWS_AS(load_input(data("missing.alg")), MalformedInput);
}

TEST_CASE("an infinite path algebra is refused") {
  CHECK_THROWS_AS(load_input(data("free_loop.quiver")), InfiniteDimensional);
}

TEST_CASE("write_algebra round trip") {
  for (const auto& a : {fleet::dual_numbers(), fleet::quantum_exterior(2), fleet::product_qq(),
                        change_field(fleet::group_z2(), Field::prime(3))}) {
    auto back = parse_input(write_algebra(a), "round trip");
    same_algebra(back.algebra, a);
  }
  auto text = write_algebra(fleet::quantum_exterior(2), fleet::quantum_exterior_form(2));
  CHECK(*parse_input(text, "rt").form == fleet::quantum_exterior_form(2));
}

TEST_CASE("form and structural map files") {
  Algebra qq = fleet::product_qq();
  CHECK(load_form(data("swap.form"), qq) == fleet::product_qq_swap());
  CHECK_THROWS_AS(load_form(data("swap.form"), fleet::rationals()), MalformedInput);

  Algebra dn = fleet::dual_numbers();
  StructuralMap s = load_structural_map(data("dual_numbers_symmetric.psi"), dn);
  CHECK(s.status == StructuralMap::Status::Unvalidated);
  validate_structural_map(s);
  CHECK(s.status == StructuralMap::Status::Pass);
  StructuralMap plain = parse_structural_map("[psi] 1 1 1 1\n[unit] 1*1\n", "t", dn);
  validate_structural_map(plain);
  CHECK(plain.status == StructuralMap::Status::Fail);
  CHECK_THROWS_AS(parse_structural_map("[psi] 1 1 q 1\n", "t", dn), ParseError);
}
