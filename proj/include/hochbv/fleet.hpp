#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "hochbv/algebra.hpp"
#include "hochbv/quiver.hpp"

// Small algebras used throughout the tests, the acceptance suite and the
// data/ directory.

namespace hochbv {

using Entry3 = std::tuple<std::size_t, std::size_t, std::size_t, Scalar>;

/// Builds an algebra from sparse structure constants (absent entries are 0).
Algebra make_algebra(const Field& f, std::vector<std::string> labels, Vector unit,
                     const std::vector<Entry3>& entries);
/// Maps rational structure constants into another field.
Algebra change_field(const Algebra& a, const Field& f);
Matrix change_field(const Matrix& m, const Field& f);

namespace fleet {

Algebra rationals();                       // ℚ
MonomialPresentation loop_aa();            // one loop a, relation aa
MonomialPresentation a2();                 // 1 → 2
MonomialPresentation free_loop();          // one loop, no relations
Algebra dual_numbers();                    // ℚ[x]/(x²) by its table, basis 1, x
Algebra group_z2();                        // ℚ[ℤ/2], basis 1, g
Algebra product_qq();                      // ℚ×ℚ, idempotents e1, e2
Algebra quantum_exterior(const mpq_class& q);  // ℚ⟨x,y⟩/(x², y², xy+q·yx)

/// ⟨1,x⟩ = ⟨x,1⟩ = 1 on ℚ[x]/(x²) (also valid for the loop algebra e, a).
Matrix dual_numbers_form();
/// ⟨g,h⟩ = δ_{gh,1}.
Matrix group_z2_form();
/// ⟨u,v⟩ = u₁v₁ + u₂v₂.
Matrix product_qq_form();
/// ⟨u,v⟩ = coefficient of xy in uv.
Matrix quantum_exterior_form(const mpq_class& q);
Matrix rationals_form();

/// ℚ×ℚ swap.
Matrix product_qq_swap();

}  // namespace fleet
}  // namespace hochbv
