#include "hochbv/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <variant>

#include "echelon.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/kernels/fp_kernels.hpp"

namespace hochbv {

using detail::Echelon;
using detail::PrimeOps;
using detail::RationalOps;
using detail::SparseVec;

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <class Ops>
SparseVec<typename Ops::T> to_sparse(const Ops& ops, std::span<const Scalar> v) {
  SparseVec<typename Ops::T> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<std::uint32_t>(i), ops.from(v[i]));
  return s;
}

template <class Ops>
ColumnEchelon column_echelon_sparse(const Matrix& m, const Ops& ops, bool want_kernel) {
  const Matrix cols = m.transpose();  // row c = column c of m
  const std::size_t n = m.cols();

  // Columns sharing a row must be eliminated together; everything else
  // splits into independent blocks.
  DisjointSets sets(n);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t k = 1; k < row.size(); ++k) sets.unite(row[0].first, row[k].first);
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::int64_t> block_of(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t root = sets.find(c);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[root])].push_back(c);
  }

  ColumnEchelon out;
  std::vector<std::pair<std::size_t, Vector>> kernel;
  std::vector<std::int64_t> local_row(m.rows(), -1);
  for (const auto& block : blocks) {
    std::vector<std::size_t> rows_used;
    for (std::size_t c : block)
      for (const auto& e : cols.row(c))
        if (local_row[e.first] < 0) {
          local_row[e.first] = static_cast<std::int64_t>(rows_used.size());
          rows_used.push_back(e.first);
        }
    const auto k = static_cast<std::uint32_t>(rows_used.size());
    Echelon<Ops> ech(ops, k);
    for (std::size_t j = 0; j < block.size(); ++j) {
      SparseVec<typename Ops::T> v;
      for (const auto& e : cols.row(block[j]))
        v.emplace_back(static_cast<std::uint32_t>(local_row[e.first]), ops.from(e.second));
      std::sort(v.begin(), v.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (want_kernel) v.emplace_back(k + static_cast<std::uint32_t>(j), ops.one());
      if (ech.insert(v)) {
        out.pivot_columns.push_back(block[j]);
      } else if (want_kernel) {
        Vector kv = zero_vector(m.field(), n);
        for (const auto& [idx, val] : v) kv[block[idx - k]] = ops.to(val);
        kernel.emplace_back(block[j], std::move(kv));
      }
    }
    for (std::size_t r : rows_used) local_row[r] = -1;
  }
  std::sort(out.pivot_columns.begin(), out.pivot_columns.end());
  std::sort(kernel.begin(), kernel.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& kv : kernel) out.kernel.push_back(std::move(kv.second));
  return out;
}

ColumnEchelon column_echelon_dense_fp(const Matrix& m) {
  const std::uint32_t p = m.field().modulus;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::uint32_t> a(R * C, 0);
  for (std::size_t r = 0; r < R; ++r)
    for (const auto& [c, s] : m.row(r)) a[r * C + c] = s.residue_value();

  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < C && prow < R; ++c) {
    std::size_t sel = prow;
    while (sel < R && a[sel * C + c] == 0) ++sel;
    if (sel == R) continue;
    if (sel != prow)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(sel * C),
                       a.begin() + static_cast<std::ptrdiff_t>(sel * C + C),
                       a.begin() + static_cast<std::ptrdiff_t>(prow * C));
    std::uint32_t* pr = a.data() + prow * C;
    kernels::scale_mod(pr + c, C - c, inverse_mod(pr[c], p), p);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == prow) continue;
      std::uint32_t* row = a.data() + r * C;
      if (row[c] != 0) kernels::axpy_mod(row + c, pr + c, C - c, p - row[c], p);
    }
    pivots.push_back(c);
    ++prow;
  }

  ColumnEchelon out;
  out.pivot_columns = pivots;
  std::vector<bool> is_pivot(C, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t j = 0; j < C; ++j) {
    if (is_pivot[j]) continue;
    Vector kv = zero_vector(m.field(), C);
    kv[j] = Scalar::one(m.field());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::uint32_t x = a[i * C + j];
      if (x != 0) kv[pivots[i]] = Scalar::residue(p, p - x);
    }
    out.kernel.push_back(std::move(kv));
  }
  return out;
}

bool prefer_dense(const Matrix& m) {
  if (m.field().is_rational()) return false;
  double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (cells == 0) return false;
  double work = cells * static_cast<double>(std::min(m.rows(), m.cols()));
  return work <= 2e8 && static_cast<double>(m.nonzeros()) / cells > 0.2;
}

}  // namespace

ColumnEchelon column_echelon(const Matrix& m, Strategy s) {
  if (s == Strategy::DenseFp) {
    if (m.field().is_rational())
      throw UnsupportedCoefficients("dense F_p elimination requested over the rationals");
    return column_echelon_dense_fp(m);
  }
  if (s == Strategy::Auto && prefer_dense(m)) return column_echelon_dense_fp(m);
  if (m.field().is_rational()) return column_echelon_sparse(m, RationalOps{}, true);
  return column_echelon_sparse(m, PrimeOps{m.field().modulus}, true);
}

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  if (prefer_dense(m)) return column_echelon_dense_fp(m).pivot_columns;
  if (m.field().is_rational()) return column_echelon_sparse(m, RationalOps{}, false).pivot_columns;
  return column_echelon_sparse(m, PrimeOps{m.field().modulus}, false).pivot_columns;
}

std::vector<Vector> kernel_basis(const Matrix& m, Strategy s) {
  return column_echelon(m, s).kernel;
}

std::size_t rank(const Matrix& m, Strategy s) {
  if (s == Strategy::Auto) return pivot_columns(m).size();
  return column_echelon(m, s).pivot_columns.size();
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows())
    throw MalformedInput("right-hand side has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(m.rows()));
  check_field(m.field(), b);
  Reducer red(m.field(), m.rows(), m.cols());
  const Matrix cols = m.transpose();
  for (std::size_t c = 0; c < m.cols(); ++c) red.insert(cols.row_vector(c), c);
  return red.express(b);
}

std::vector<Vector> image_complement(const Field& f, std::size_t dim,
                                     const std::vector<Vector>& ker,
                                     const std::vector<Vector>& im) {
  Reducer kspan(f, dim, 0);
  for (const auto& v : ker) {
    if (v.size() != dim) throw MalformedInput("vector length mismatch");
    check_field(f, v);
    kspan.insert(v);
  }
  Reducer red(f, dim, 0);
  for (const auto& v : im) {
    if (v.size() != dim) throw MalformedInput("vector length mismatch");
    check_field(f, v);
    if (!kspan.in_span(v))
      throw Inconsistency("image vector lies outside the kernel span");
    red.insert(v);
  }
  std::vector<Vector> out;
  for (const auto& v : ker)
    if (red.insert(v)) out.push_back(v);
  return out;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw MalformedInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Reducer red(m.field(), n, n);
  const Matrix cols = m.transpose();
  for (std::size_t c = 0; c < n; ++c) red.insert(cols.row_vector(c), c);
  if (red.rank() != n) throw Inconsistency("matrix is singular");
  std::vector<Vector> inv_cols;
  for (std::size_t i = 0; i < n; ++i)
    inv_cols.push_back(*red.express(unit_vector(m.field(), n, i)));
  return Matrix::from_columns(m.field(), n, inv_cols);
}

struct Reducer::Impl {
  std::variant<Echelon<RationalOps>, Echelon<PrimeOps>> ech;
};

Reducer::Reducer(Field f, std::size_t dim, std::size_t tag_count)
    : field_(f), dim_(dim), tags_(tag_count) {
  if (f.is_rational())
    impl_ = std::make_unique<Impl>(
        Impl{Echelon<RationalOps>(RationalOps{}, static_cast<std::uint32_t>(dim))});
  else
    impl_ = std::make_unique<Impl>(
        Impl{Echelon<PrimeOps>(PrimeOps{f.modulus}, static_cast<std::uint32_t>(dim))});
}

Reducer::~Reducer() = default;
Reducer::Reducer(Reducer&&) noexcept = default;
Reducer& Reducer::operator=(Reducer&&) noexcept = default;

bool Reducer::insert(std::span<const Scalar> v, std::optional<std::size_t> tag) {
  if (v.size() != dim_) throw MalformedInput("vector length mismatch");
  check_field(field_, v);
  if (tag && *tag >= tags_) throw MalformedInput("reducer tag out of range");
  return std::visit(
      [&](auto& ech) {
        auto s = to_sparse(ech.ops(), v);
        if (tag) s.emplace_back(static_cast<std::uint32_t>(dim_ + *tag), ech.ops().one());
        return ech.insert(s);
      },
      impl_->ech);
}

bool Reducer::in_span(std::span<const Scalar> v) const {
  if (v.size() != dim_) throw MalformedInput("vector length mismatch");
  check_field(field_, v);
  return std::visit(
      [&](const auto& ech) {
        auto s = to_sparse(ech.ops(), v);
        ech.reduce(s);
        return s.empty() || s.front().first >= dim_;
      },
      impl_->ech);
}

std::optional<Vector> Reducer::express(std::span<const Scalar> v) const {
  if (v.size() != dim_) throw MalformedInput("vector length mismatch");
  check_field(field_, v);
  return std::visit(
      [&](const auto& ech) -> std::optional<Vector> {
        auto s = to_sparse(ech.ops(), v);
        ech.reduce(s);
        if (!s.empty() && s.front().first < dim_) return std::nullopt;
        Vector out = zero_vector(field_, tags_);
        for (const auto& [idx, val] : s) out[idx - dim_] = ech.ops().to(ech.ops().neg(val));
        return out;
      },
      impl_->ech);
}

std::size_t Reducer::rank() const {
  return std::visit([](const auto& ech) { return ech.rank(); }, impl_->ech);
}

}  // namespace hochbv
