#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hochbv/scalar.hpp"

namespace hochbv {

using Vector = std::vector<Scalar>;

Vector zero_vector(const Field& f, std::size_t n);
Vector unit_vector(const Field& f, std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
/// y += c·x
void add_scaled(Vector& y, const Scalar& c, std::span<const Scalar> x);
Vector scaled(const Scalar& c, std::span<const Scalar> x);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
/// Throws FieldMismatch unless every entry lies in f.
void check_field(const Field& f, std::span<const Scalar> v);

/// Sparse matrix over one exact field, stored by rows.
///
/// Rows keep their entries sorted by column with no explicit zeros, so
/// equality is structural.
class Matrix {
 public:
  using Entry = std::pair<std::uint32_t, Scalar>;

  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  /// Dense construction; every entry must share the field `f`.
  static Matrix from_rows(const Field& f,
                          const std::vector<std::vector<Scalar>>& rows,
                          std::size_t cols_if_empty = 0);
  static Matrix from_columns(const Field& f, std::size_t rows,
                             const std::vector<Vector>& cols);
  static Matrix identity(const Field& f, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept;
  bool is_zero() const noexcept { return nonzeros() == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  std::span<const Entry> row(std::size_t r) const { return data_[r]; }
  Vector row_vector(std::size_t r) const;
  Vector column(std::size_t c) const;

  Vector apply(std::span<const Scalar> v) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  /// Submatrix keeping the listed columns in the given order.
  Matrix select_columns(std::span<const std::size_t> cols) const;

  std::vector<std::vector<Scalar>> to_dense() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  friend class MatrixBuilder;
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Accumulates (row, col, value) contributions; repeated positions add up.
class MatrixBuilder {
 public:
  MatrixBuilder(Field f, std::size_t rows, std::size_t cols);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  Matrix build() &&;
  const Field& field() const noexcept { return m_.field_; }

 private:
  Matrix m_;
};

}  // namespace hochbv
