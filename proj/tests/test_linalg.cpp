#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/kernels/fp_kernels.hpp"
#include "hochbv/linalg.hpp"

using namespace hochbv;
using testing::qfrac;
using testing::qmat;
using testing::qvec;

TEST_CASE("scalar arithmetic stays exact") {
  Scalar a(mpq_class(1, 3)), b(mpq_class(1, 6));
  CHECK((a + b).to_string() == "1/2");
  CHECK((a / b).to_string() == "2");
  CHECK(Scalar::parse(Field::rationals(), "-4/6").to_string() == "-2/3");
  auto f7 = Field::prime(7);
  CHECK(Scalar::from_rational(f7, mpq_class(1, 2)).residue_value() == 4);
  CHECK((Scalar::residue(7, 3) * Scalar::residue(7, 5)).residue_value() == 1);
  CHECK_THROWS_AS(Scalar::from_rational(f7, mpq_class(1, 7)), MalformedInput);
  CHECK_THROWS_AS(Scalar(1L) + Scalar::residue(7, 1), FieldMismatch);
  CHECK_THROWS_AS(Field::prime(9), MalformedInput);
  CHECK_THROWS_AS(Scalar::parse(Field::rationals(), "1/0"), MalformedInput);
}

TEST_CASE("kernel of a rank one matrix") {
  auto k = kernel_basis(qmat({{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == qvec({-2, 1}));
}

TEST_CASE("kernel edge cases") {
  CHECK(kernel_basis(qmat({{1, 0}, {0, 1}})).empty());
  auto k = kernel_basis(qmat({{0, 0, 0}, {0, 0, 0}}));
  REQUIRE(k.size() == 3);
  CHECK(k[0] == qvec({1, 0, 0}));
  CHECK(k[2] == qvec({0, 0, 1}));
  // zero rows: every vector is in the kernel
  CHECK(kernel_basis(Matrix(Field::rationals(), 0, 2)).size() == 2);
}

TEST_CASE("kernel basis is the reduced echelon one") {
  // x1 + x2 + x3 = 0, x2 - x4 = 0
  auto k = kernel_basis(qmat({{1, 1, 1, 0}, {0, 1, 0, -1}}));
  REQUIRE(k.size() == 2);
  CHECK(k[0] == qvec({-1, 0, 1, 0}));
  CHECK(k[1] == qvec({-1, 1, 0, 1}));
}

TEST_CASE("solve") {
  auto x = solve(qmat({{2}}), qvec({3}));
  REQUIRE(x);
  CHECK(*x == qfrac({{3, 2}}));
  CHECK_FALSE(solve(qmat({{1, 1}, {1, 1}}), qvec({1, 2})));
  auto m = qmat({{1, 2, 3}, {0, 1, 1}});
  auto y = solve(m, qvec({5, 2}));
  REQUIRE(y);
  CHECK(m.apply(*y) == qvec({5, 2}));
  CHECK_THROWS_AS(solve(m, qvec({1})), MalformedInput);
}

TEST_CASE("image complement") {
  auto f = Field::rationals();
  auto c = image_complement(f, 2, {qvec({1, 1}), qvec({1, -1})}, {qvec({1, 1})});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == qvec({1, -1}));
  CHECK(image_complement(f, 2, {qvec({1, 0})}, {qvec({1, 0})}).empty());
  CHECK_THROWS_AS(image_complement(f, 2, {qvec({1, 0})}, {qvec({0, 1})}),
                  Inconsistency);
}

TEST_CASE("rank and inverse") {
  CHECK(rank(qmat({{1, 2}, {2, 4}})) == 1);
  auto m = qmat({{2, 1}, {1, 1}});
  CHECK(inverse(m) == qmat({{1, -1}, {-1, 2}}));
  CHECK_THROWS_AS(inverse(qmat({{1, 2}, {2, 4}})), Inconsistency);
}

TEST_CASE("field tags are enforced") {
  std::vector<std::vector<Scalar>> rows{{Scalar(1L), Scalar::residue(5, 1)}};
  CHECK_THROWS_AS(Matrix::from_rows(Field::rationals(), rows), FieldMismatch);
}

namespace {

Matrix random_fp(std::mt19937& rng, std::uint32_t p, std::size_t r,
                 std::size_t c, double density, std::size_t rank_cap) {
  // product of two random factors to force rank deficiency
  std::uniform_int_distribution<std::uint32_t> val(1, p - 1);
  std::bernoulli_distribution keep(density);
  auto f = Field::prime(p);
  MatrixBuilder a(f, r, rank_cap), b(f, rank_cap, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < rank_cap; ++k)
      if (keep(rng)) a.add(i, k, Scalar::residue(p, val(rng)));
  for (std::size_t k = 0; k < rank_cap; ++k)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) b.add(k, j, Scalar::residue(p, val(rng)));
  return std::move(a).build() * std::move(b).build();
}

}  // namespace

TEST_CASE("sparse and dense F_p elimination agree") {
  std::mt19937 rng(12345);
  for (std::uint32_t p : {2u, 3u, 65521u, 2147483647u}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto m = random_fp(rng, p, 20 + trial * 7, 25 + trial * 5, 0.3, 12 + trial);
      auto sparse = column_echelon(m, Strategy::Sparse);
      auto dense = column_echelon(m, Strategy::DenseFp);
      CHECK(sparse.pivot_columns == dense.pivot_columns);
      CHECK(sparse.kernel == dense.kernel);
      for (const auto& v : sparse.kernel) CHECK(is_zero(m.apply(v)));
    }
  }
}

TEST_CASE("rational kernel reduces to the F_p kernel") {
  auto m = qmat({{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 1, 0}});
  auto kq = kernel_basis(m);
  auto kp = kernel_basis(testing::reduce_mod(m, 101));
  REQUIRE(kq.size() == kp.size());
  for (std::size_t i = 0; i < kq.size(); ++i)
    for (std::size_t j = 0; j < kq[i].size(); ++j)
      CHECK(Scalar::from_rational(Field::prime(101), kq[i][j].rational()) == kp[i][j]);
}

TEST_CASE("vector kernels: scalar and AVX2 agree") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 251u, 65521u, 8388593u, 67108859u}) {
    if (p >= kernels::kAvx2ModulusLimit) continue;
    std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
    for (std::size_t n : {0u, 1u, 3u, 4u, 17u, 1000u}) {
      std::vector<std::uint32_t> src(n), d1(n), d2;
      for (auto& x : src) x = val(rng);
      for (auto& x : d1) x = val(rng);
      d2 = d1;
      std::uint32_t c = val(rng);
      kernels::axpy_mod_scalar(d1.data(), src.data(), n, c, p);
      if (kernels::avx2_available()) {
        kernels::axpy_mod_avx2(d2.data(), src.data(), n, c, p);
        CHECK(d1 == d2);
        kernels::scale_mod_scalar(d1.data(), n, c, p);
        kernels::scale_mod_avx2(d2.data(), n, c, p);
        CHECK(d1 == d2);
      }
    }
  }
}

TEST_CASE("reducer expresses vectors through tagged inputs") {
  auto f = Field::rationals();
  Reducer red(f, 3, 2);
  CHECK(red.insert(qvec({1, 1, 0}), 0));
  CHECK(red.insert(qvec({0, 1, 1}), 1));
  CHECK_FALSE(red.insert(qvec({1, 2, 1})));
  auto c = red.express(qvec({2, 5, 3}));
  REQUIRE(c);
  CHECK(*c == qvec({2, 3}));
  CHECK_FALSE(red.express(qvec({1, 0, 0})));
  CHECK(red.in_span(qvec({1, 0, -1})));
}
