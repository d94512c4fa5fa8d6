#include "hochbv/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "hochbv/errors.hpp"

namespace hochbv {

Vector zero_vector(const Field& f, std::size_t n) {
  return Vector(n, Scalar::zero(f));
}

Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

void add_scaled(Vector& y, const Scalar& c, std::span<const Scalar> x) {
  if (y.size() != x.size()) throw MalformedInput("vector length mismatch");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

Vector scaled(const Scalar& c, std::span<const Scalar> x) {
  Vector y(x.begin(), x.end());
  for (auto& s : y) s *= c;
  return y;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw MalformedInput("vector length mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw MalformedInput("vector length mismatch");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw MalformedInput("vector length mismatch");
  if (a.empty()) return Scalar();
  Scalar s = Scalar::zero(a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

void check_field(const Field& f, std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!(s.field() == f))
      throw FieldMismatch("entry " + s.to_string() + " lies in " +
                          s.field().name() + ", expected " + f.name());
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::from_rows(const Field& f,
                         const std::vector<std::vector<Scalar>>& rows,
                         std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows[0].size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MalformedInput("ragged matrix rows");
    check_field(f, rows[r]);
    for (std::size_t c = 0; c < cols; ++c)
      if (!rows[r][c].is_zero())
        m.data_[r].emplace_back(static_cast<std::uint32_t>(c), rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows,
                            const std::vector<Vector>& cols) {
  MatrixBuilder b(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw MalformedInput("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      if (!cols[c][r].is_zero()) b.add(r, c, cols[c][r]);
  }
  return std::move(b).build();
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.data_[i].emplace_back(static_cast<std::uint32_t>(i), Scalar::one(f));
  return m;
}

std::size_t Matrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw MalformedInput("matrix index out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar::zero(field_);
}

Vector Matrix::row_vector(std::size_t r) const {
  Vector v = zero_vector(field_, cols_);
  for (const auto& [c, s] : data_.at(r)) v[c] = s;
  return v;
}

Vector Matrix::column(std::size_t c) const {
  Vector v = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_)
    throw MalformedInput("matrix-vector shape mismatch: " +
                         std::to_string(cols_) + " columns vs length " +
                         std::to_string(v.size()));
  Vector out = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, s] : data_[r])
      if (!v[c].is_zero()) out[r] += s * v[c];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, s] : data_[r])
      t.data_[c].emplace_back(static_cast<std::uint32_t>(r), s);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw MalformedInput("matrix product shape mismatch");
  if (!(field_ == o.field_)) throw FieldMismatch("matrix product across fields");
  MatrixBuilder b(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [k, s] : data_[r])
      for (const auto& [c, t] : o.data_[k]) b.add(r, c, s * t);
  return std::move(b).build();
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw MalformedInput("matrix sum shape mismatch");
  MatrixBuilder b(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, s] : data_[r]) b.add(r, c, s);
    for (const auto& [c, s] : o.data_[r]) b.add(r, c, s);
  }
  return std::move(b).build();
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-Scalar::one(field_)); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& row : m.data_) {
    for (auto& e : row) e.second *= c;
    std::erase_if(row, [](const Entry& e) { return e.second.is_zero(); });
  }
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::int64_t> where(cols_, -1);
  for (std::size_t i = 0; i < cols.size(); ++i)
    where.at(cols[i]) = static_cast<std::int64_t>(i);
  MatrixBuilder b(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, s] : data_[r])
      if (where[c] >= 0) b.add(r, static_cast<std::size_t>(where[c]), s);
  return std::move(b).build();
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
  std::vector<std::vector<Scalar>> out(rows_, zero_vector(field_, cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, s] : data_[r]) out[r][c] = s;
  return out;
}

MatrixBuilder::MatrixBuilder(Field f, std::size_t rows, std::size_t cols)
    : m_(f, rows, cols) {}

void MatrixBuilder::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= m_.rows_ || c >= m_.cols_)
    throw MalformedInput("matrix builder index out of range");
  if (!(v.field() == m_.field_))
    throw FieldMismatch("entry " + v.to_string() + " lies in " +
                        v.field().name() + ", expected " + m_.field_.name());
  if (!v.is_zero()) m_.data_[r].emplace_back(static_cast<std::uint32_t>(c), v);
}

Matrix MatrixBuilder::build() && {
  for (auto& row : m_.data_) {
    std::stable_sort(row.begin(), row.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Matrix::Entry> merged;
    merged.reserve(row.size());
    for (auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
    row = std::move(merged);
  }
  return std::move(m_);
}

}  // namespace hochbv
