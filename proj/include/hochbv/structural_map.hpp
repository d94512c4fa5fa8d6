#pragma once

#include <string>
#include <vector>

#include "hochbv/algebra.hpp"
#include "hochbv/report.hpp"

namespace hochbv {

/// Candidate bilinear map ψ: M ⊗ M → M on a coefficient bimodule, with a
/// unit candidate. ψ(f_i ⊗ f_j) = psi[i][j].
struct StructuralMap {
  enum class Status { Unvalidated, Pass, Fail };

  std::string name;
  Algebra algebra;
  Bimodule module;
  std::vector<std::vector<Vector>> psi;
  Vector unit;
  Status status = Status::Unvalidated;
  VerificationReport validation{"not validated"};

  Vector apply(std::span<const Scalar> x, std::span<const Scalar> y) const;
};

}  // namespace hochbv
