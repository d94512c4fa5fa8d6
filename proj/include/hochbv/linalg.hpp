#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hochbv/matrix.hpp"

namespace hochbv {

enum class Strategy {
  Auto,     // sparse elimination, dense F_p when the matrix is small and dense
  Sparse,   // column insertion, split by connected components
  DenseFp,  // dense row reduction with the vectorised kernels (F_p only)
};

/// Greedy column independence: pivot_columns are the columns that are not
/// combinations of earlier ones, and kernel is the reduced-row-echelon
/// kernel basis (one vector per non-pivot column, ordered by that column).
struct ColumnEchelon {
  std::vector<std::size_t> pivot_columns;
  std::vector<Vector> kernel;
};

ColumnEchelon column_echelon(const Matrix& m, Strategy s = Strategy::Auto);
/// Same pivot columns as column_echelon, without building the kernel.
std::vector<std::size_t> pivot_columns(const Matrix& m);
std::vector<Vector> kernel_basis(const Matrix& m, Strategy s = Strategy::Auto);
std::size_t rank(const Matrix& m, Strategy s = Strategy::Auto);

/// Some x with m·x = b; the free variables of the echelon form are zero.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

/// Vectors from `ker` whose classes form a basis of span(ker)/span(im).
/// Throws Inconsistency unless span(im) ⊆ span(ker).
std::vector<Vector> image_complement(const Field& f, std::size_t dim,
                                     const std::vector<Vector>& ker,
                                     const std::vector<Vector>& im);

/// Throws Inconsistency for singular input.
Matrix inverse(const Matrix& m);

/// Incremental echelon form that remembers how each stored row was made.
///
/// Inserted vectors may carry a tag in [0, tag_count); `express` writes a
/// vector in the span as a combination of the tagged inputs. Untagged
/// inputs still extend the span but do not show up in combinations.
class Reducer {
 public:
  Reducer(Field f, std::size_t dim, std::size_t tag_count);
  ~Reducer();
  Reducer(Reducer&&) noexcept;
  Reducer& operator=(Reducer&&) noexcept;

  /// True when v was independent of everything stored so far; dependent
  /// vectors are discarded.
  bool insert(std::span<const Scalar> v, std::optional<std::size_t> tag = {});
  bool in_span(std::span<const Scalar> v) const;
  /// Coefficients c with v = Σ c[t]·input[t], or nullopt if v is outside
  /// the span. Only meaningful when every stored input was tagged.
  std::optional<Vector> express(std::span<const Scalar> v) const;

  std::size_t rank() const;
  std::size_t dim() const noexcept { return dim_; }
  const Field& field() const noexcept { return field_; }

  struct Impl;

 private:
  Field field_;
  std::size_t dim_;
  std::size_t tags_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hochbv
