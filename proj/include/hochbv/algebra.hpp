#pragma once

#include <string>
#include <vector>

#include "hochbv/matrix.hpp"
#include "hochbv/report.hpp"

namespace hochbv {

/// Finite-dimensional unital algebra given by structure constants
/// e_i·e_j = Σ_k c[i][j][k] e_k.
class Algebra {
 public:
  Algebra() = default;
  /// Checks shapes and field tags only; associativity is validate_algebra's job.
  Algebra(Field f, std::vector<std::string> labels,
          std::vector<std::vector<Vector>> products, Vector unit);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Vector& unit() const noexcept { return unit_; }
  /// Coordinates of e_i·e_j.
  const Vector& product(std::size_t i, std::size_t j) const { return c_[i][j]; }
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[i][j][k];
  }

  Vector multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  /// Matrix of x ↦ a·x (resp. x ↦ x·a).
  Matrix left_multiplication(std::span<const Scalar> a) const;
  Matrix right_multiplication(std::span<const Scalar> a) const;
  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim(), i); }
  std::size_t index_of(std::string_view label) const;  // throws MalformedInput

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vector>> c_;
  Vector unit_;
};

/// A-bimodule by action matrices: left[i] is v ↦ e_i·v, right[i] is v ↦ v·e_i.
struct Bimodule {
  enum class Kind { Regular, Dual, Twisted, Custom };

  Kind kind = Kind::Custom;
  std::string name;
  Field field;
  std::vector<std::string> labels;
  std::vector<Matrix> left;
  std::vector<Matrix> right;

  std::size_t dim() const noexcept { return labels.size(); }
  /// Action of a general algebra element a = Σ a_i e_i.
  Matrix left_action(std::span<const Scalar> a) const;
  Matrix right_action(std::span<const Scalar> a) const;
  bool same_actions(const Bimodule& o) const {
    return left == o.left && right == o.right;
  }
};

/// Linear endomorphism of A; column i holds N(e_i).
struct AlgebraEndo {
  Matrix n;
  Vector apply(std::span<const Scalar> v) const { return n.apply(v); }
};

VerificationReport validate_algebra(const Algebra& a);
VerificationReport validate_bimodule(const Algebra& a, const Bimodule& m);
/// Multiplicative, unital and (optionally) invertible.
VerificationReport validate_endomorphism(const Algebra& a, const AlgebraEndo& n,
                                         bool require_invertible = true);

Bimodule regular_bimodule(const Algebra& a);
Bimodule dual_bimodule(const Algebra& a, const Bimodule& m);
/// A_N: left action as in A, right action through N. Throws
/// InvalidAutomorphism unless N is a unital multiplicative bijection.
Bimodule twisted_bimodule(const Algebra& a, const AlgebraEndo& n);
/// Basis of {v : e_i·v = v·e_i for all i}.
std::vector<Vector> h_zero_invariants(const Algebra& a, const Bimodule& m);

}  // namespace hochbv
