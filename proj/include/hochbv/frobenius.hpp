#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hochbv/bv.hpp"
#include "hochbv/complex.hpp"
#include "hochbv/report.hpp"
#include "hochbv/structural_map.hpp"

// Bilinear forms G[i][j] = ⟨e_i, e_j⟩ and what they induce.

namespace hochbv {

enum class FormKind { SymmetricFrobenius, Frobenius, Invalid };
std::string form_kind_name(FormKind k);

/// Non-degeneracy and ⟨ab,c⟩ = ⟨a,bc⟩ are required; symmetry is reported
/// as an informational flag. The classification is added as a label.
VerificationReport validate_form(const Algebra& a, const Matrix& g);
FormKind classify_form(const Algebra& a, const Matrix& g);

/// N = G⁻¹Gᵀ, so that ⟨a,b⟩ = ⟨b,N(a)⟩. Throws MalformedInput for an
/// invalid form and Inconsistency if N fails its own checks.
AlgebraEndo nakayama(const Algebra& a, const Matrix& g);
VerificationReport verify_nakayama(const Algebra& a, const Matrix& g, const AlgebraEndo& n);

/// Z(a) = ⟨−,a⟩ in dual-basis coordinates (the matrix G itself), checked to
/// intertwine A_twist (A when twist is absent) with A*.
VerificationReport check_z_intertwining(const Algebra& a, const Matrix& g,
                                        const std::optional<AlgebraEndo>& twist);
/// Throws Inconsistency with the first witness when the check fails.
Matrix z_isomorphism(const Algebra& a, const Matrix& g,
                     const std::optional<AlgebraEndo>& twist = std::nullopt);
/// Applies a module map to every value of a cochain.
Cochain push_forward(const Matrix& z, const Cochain& f);

/// Δ: C^n(A,A) → C^{n−1}(A,A) for a symmetric form, n ≥ 1.
Cochain tradler_delta(const Algebra& a, const Matrix& g, const Cochain& f);

/// ψ(Zu ⊗ Zv) = Z(uv), unit Z(1). Validated on construction.
StructuralMap symmetric_psi(const Algebra& a, const Matrix& g);
/// ψ(Zu ⊗ Zv) = Z(u·N(v)), unit Z(1). Throws MalformedInput if n is not the
/// Nakayama automorphism of g. Validated on construction.
StructuralMap frobenius_psi(const Algebra& a, const Matrix& g, const AlgebraEndo& n);
/// μ(a⊗b) = a·N(b) on A_N: associativity, unit and bimodule-map checks.
VerificationReport verify_mu(const Algebra& a, const AlgebraEndo& n);

/// B_N: C_n(A,A_N) → C_{n+1}(A,A_N),
/// x⊗a₁…aₙ ↦ 1⊗N⁻¹(x)⊗a₁…aₙ + Σ_{i≥1} (−1)^{in} 1⊗a_i…aₙ⊗x⊗N(a₁)…N(a_{i−1}).
Matrix twisted_connes_B_matrix(const Algebra& a, const AlgebraEndo& n, std::size_t degree);
/// Throws UnsupportedCoefficients unless m is A_N.
Chain twisted_connes_B(const Algebra& a, const AlgebraEndo& n, const Bimodule& m,
                       const Chain& z);
/// Cycle preservation and B_N² = 0 on homology, on the N-invariant part of
/// the complex; the same checks on the whole complex are informational.
VerificationReport verify_twisted_B(const Algebra& a, const AlgebraEndo& n,
                                    std::size_t max_degree, const Caps& caps = {});

struct MinimalPolynomial {
  Vector coefficients;  // low degree first, monic
  bool squarefree = false;
  bool splits = false;
  std::vector<std::size_t> factor_degrees;  // linear factors first
  std::string to_string() const;
};
MinimalPolynomial minimal_polynomial(const Matrix& n);
VerificationReport semisimplicity_check(const AlgebraEndo& n);

/// HH^•(A) with ∪ and Tradler's Δ.
BVCalculus tradler_calculus(const Algebra& a, const Matrix& g, std::size_t max_degree,
                            const Caps& caps = {});

/// Z_* against the ψ-calculus of symmetric_psi, through max_degree.
VerificationReport verify_corollary_4_1(const Algebra& a, const Matrix& g,
                                        std::size_t max_degree, BracketConvention conv,
                                        const Caps& caps = {});

}  // namespace hochbv
