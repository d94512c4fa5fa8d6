#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hochbv/algebra.hpp"
#include "hochbv/linalg.hpp"

namespace hochbv {

// Tensor conventions. A cochain f ∈ C^n(A,M) is stored tuple-major: entry
// (i₁…iₙ, k) sits at (Σ i_j d^{n−j})·m + k, i.e. the m×dⁿ matrix read
// column by column. A chain x⊗a₁⊗…⊗aₙ ∈ M⊗A^{⊗n} sits at x·dⁿ + (i₁…iₙ).

struct Caps {
  std::size_t max_degree = 4;
  std::size_t max_columns = 20000;
};

std::size_t ipow(std::size_t base, std::size_t exp);
std::vector<std::size_t> decode_tuple(std::size_t index, std::size_t d, std::size_t n);
std::size_t encode_tuple(std::span<const std::size_t> t, std::size_t d);
std::string tuple_label(std::span<const std::size_t> t, const std::vector<std::string>& labels);

struct Cochain {
  std::size_t degree = 0;
  std::size_t module_dim = 0;
  Vector values;

  static Cochain zero(const Field& f, std::size_t degree, std::size_t d, std::size_t m);
  /// f(e_{i₁}⊗…⊗e_{iₙ}) for the tuple with the given index.
  Vector value(std::size_t tuple_index) const;
  /// The m×dⁿ matrix view.
  Matrix as_matrix(const Field& f) const;
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

struct Chain {
  std::size_t degree = 0;
  Vector values;
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// dⁿ: C^n(A,M) → C^{n+1}(A,M).
Matrix coboundary_matrix(const Algebra& a, const Bimodule& m, std::size_t n);
/// b_n: M⊗A^{⊗n} → M⊗A^{⊗(n−1)}, n ≥ 1.
Matrix boundary_matrix(const Algebra& a, const Bimodule& m, std::size_t n);
/// Connes' B: A⊗A^{⊗n} → A⊗A^{⊗(n+1)} on regular coefficients.
Matrix connes_B_matrix(const Algebra& a, std::size_t n);

Cochain coboundary(const Algebra& a, const Bimodule& m, const Cochain& f);
Chain boundary(const Algebra& a, const Bimodule& m, const Chain& z);
/// Throws UnsupportedCoefficients unless m is the regular bimodule.
Chain connes_B(const Algebra& a, const Bimodule& m, const Chain& z);

struct CohomologyClass {
  std::size_t degree = 0;
  Vector coords;
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

/// ker(out)/im(in) in one degree, with chosen representatives and a
/// reducer that writes any cycle as (boundary of something) + Σ c·rep.
class Subquotient {
 public:
  enum class Kind { Cohomology, Homology };

  /// `in` maps into this degree, `out` leaves it.
  /// `describe` names a coordinate of out's target, for error messages.
  Subquotient(Kind kind, std::size_t degree, const Matrix& in, const Matrix& out,
              std::function<std::string(std::size_t)> describe = {});

  Kind kind() const noexcept { return kind_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return reps_.size(); }
  std::size_t ambient_dim() const noexcept { return out_->cols(); }
  const Field& field() const noexcept { return out_->field(); }
  const std::vector<Vector>& kernel() const noexcept { return kernel_; }
  const std::vector<Vector>& image() const noexcept { return image_; }
  const std::vector<Vector>& representatives() const noexcept { return reps_; }

  bool is_cycle(std::span<const Scalar> v) const;
  /// Throws NotACocycle (with the offending coordinate) for non-cycles.
  CohomologyClass reduce(std::span<const Scalar> v) const;
  /// Some g with in·g = v, if v is a boundary; throws for non-cycles.
  std::optional<Vector> preimage(std::span<const Scalar> v) const;
  Vector representative(const CohomologyClass& c) const;
  CohomologyClass basis_class(std::size_t j) const;

 private:
  void require_cycle(std::span<const Scalar> v) const;
  std::optional<Vector> express(std::span<const Scalar> v) const;

  Kind kind_;
  std::size_t degree_;
  std::size_t in_cols_;
  std::shared_ptr<const Matrix> out_;
  std::vector<Vector> kernel_, image_, reps_;
  std::shared_ptr<const Reducer> reducer_;
  std::function<std::string(std::size_t)> describe_;
};

using CohomologySpace = Subquotient;
using HomologySpace = Subquotient;

/// Throws CapExceeded when n exceeds caps.max_degree or a needed cochain
/// space would have more than caps.max_columns coordinates.
CohomologySpace cohomology_space(const Algebra& a, const Bimodule& m, std::size_t n,
                                 const Caps& caps = {});
HomologySpace homology_space(const Algebra& a, const Bimodule& m, std::size_t n,
                             const Caps& caps = {});
/// H⁰…H^max sharing the differential matrices.
std::vector<CohomologySpace> cohomology_spaces(const Algebra& a, const Bimodule& m,
                                               std::size_t max_n, const Caps& caps = {});
std::vector<HomologySpace> homology_spaces(const Algebra& a, const Bimodule& m,
                                           std::size_t max_n, const Caps& caps = {});

/// Some g with dg = f, if [f] = 0.
std::optional<Cochain> is_coboundary(const CohomologySpace& s, const Cochain& f);
CohomologyClass reduce_to_class(const CohomologySpace& s, const Cochain& f);

void check_cochain_cap(const Algebra& a, const Bimodule& m, std::size_t n,
                       const Caps& caps);

}  // namespace hochbv
