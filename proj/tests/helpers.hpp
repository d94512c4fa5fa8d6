#pragma once

#include <initializer_list>
#include <vector>

#include "hochbv/matrix.hpp"

namespace testing {

inline hochbv::Vector qvec(std::initializer_list<long> xs) {
  hochbv::Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline hochbv::Vector qfrac(std::initializer_list<std::pair<long, long>> xs) {
  hochbv::Vector v;
  for (auto [a, b] : xs) v.emplace_back(mpq_class(a, b));
  return v;
}

inline hochbv::Matrix qmat(std::initializer_list<std::initializer_list<long>> rows,
                           std::size_t cols_if_empty = 0) {
  std::vector<std::vector<hochbv::Scalar>> r;
  for (auto row : rows) r.push_back(qvec(row));
  return hochbv::Matrix::from_rows(hochbv::Field::rationals(), r, cols_if_empty);
}

inline hochbv::Matrix reduce_mod(const hochbv::Matrix& m, std::uint32_t p) {
  auto f = hochbv::Field::prime(p);
  hochbv::MatrixBuilder b(f, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, s] : m.row(r))
      b.add(r, c, hochbv::Scalar::from_rational(f, s.rational()));
  return std::move(b).build();
}

}  // namespace testing
