#pragma once

// Typed sparse echelon engine shared by the linear-algebra routines.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "hochbv/scalar.hpp"

namespace hochbv::detail {

struct RationalOps {
  using T = mpq_class;
  static bool is_zero(const T& v) { return sgn(v) == 0; }
  T from(const Scalar& s) const { return s.rational(); }
  Scalar to(const T& v) const { return Scalar(v); }
  T one() const { return T(1); }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
  void add_mul(T& acc, const T& c, const T& x) const { acc += c * x; }
  Field field() const { return Field::rationals(); }
};

struct PrimeOps {
  using T = std::uint32_t;
  std::uint32_t p;
  static bool is_zero(T v) { return v == 0; }
  T from(const Scalar& s) const { return s.residue_value(); }
  Scalar to(T v) const { return Scalar::residue(p, v); }
  T one() const { return 1; }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T mul(T a, T b) const {
    return static_cast<T>(static_cast<std::uint64_t>(a) * b % p);
  }
  T inv(T a) const { return inverse_mod(a, p); }
  void add_mul(T& acc, T c, T x) const {
    acc = static_cast<T>((acc + static_cast<std::uint64_t>(c) * x) % p);
  }
  Field field() const { return {Field::Kind::Prime, p}; }
};

template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

/// out = tail of v from `pos` plus c·row, merged by index.
template <class Ops>
void merge_axpy(const Ops& ops, const SparseVec<typename Ops::T>& v,
                std::size_t pos, const typename Ops::T& c,
                const SparseVec<typename Ops::T>& row,
                SparseVec<typename Ops::T>& out) {
  out.clear();
  out.reserve(v.size() - pos + row.size());
  std::size_t i = pos, j = 0;
  while (i < v.size() || j < row.size()) {
    if (j == row.size() || (i < v.size() && v[i].first < row[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || row[j].first < v[i].first) {
      out.emplace_back(row[j].first, ops.mul(c, row[j].second));
      ++j;
    } else {
      auto val = v[i].second;
      ops.add_mul(val, c, row[j].second);
      if (!Ops::is_zero(val)) out.emplace_back(v[i].first, std::move(val));
      ++i;
      ++j;
    }
  }
}

/// Semi-reduced echelon over coordinates [0, dim). Indices ≥ dim are tag
/// coordinates carried along but never used as pivots.
template <class Ops>
class Echelon {
 public:
  using T = typename Ops::T;

  Echelon(Ops ops, std::uint32_t dim)
      : ops_(std::move(ops)), dim_(dim), pivot_row_(dim, -1) {}

  /// Clears every pivot coordinate out of v.
  void reduce(SparseVec<T>& v) const {
    std::size_t pos = 0;
    SparseVec<T> tail;
    while (pos < v.size() && v[pos].first < dim_) {
      std::int32_t r = pivot_row_[v[pos].first];
      if (r < 0) {
        ++pos;
        continue;
      }
      T c = ops_.neg(v[pos].second);
      merge_axpy(ops_, v, pos, c, rows_[static_cast<std::size_t>(r)], tail);
      v.resize(pos);
      v.insert(v.end(), std::make_move_iterator(tail.begin()),
               std::make_move_iterator(tail.end()));
    }
  }

  /// Reduces v; if something survives in [0, dim) it becomes a new row and
  /// true is returned. Otherwise v holds the tag-only residue.
  bool insert(SparseVec<T>& v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < v.size() && v[lead].first < dim_ &&
           pivot_row_[v[lead].first] >= 0)
      ++lead;
    if (lead == v.size() || v[lead].first >= dim_) return false;
    // entries before lead are impossible after reduce; lead is v[0]
    T s = ops_.inv(v[lead].second);
    for (auto& e : v) e.second = ops_.mul(s, e.second);
    pivot_row_[v[lead].first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::uint32_t dim() const noexcept { return dim_; }
  const Ops& ops() const noexcept { return ops_; }

 private:
  Ops ops_;
  std::uint32_t dim_;
  std::vector<std::int32_t> pivot_row_;
  std::vector<SparseVec<T>> rows_;
};

}  // namespace hochbv::detail
