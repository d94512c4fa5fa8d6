#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hochbv/complex.hpp"
#include "hochbv/report.hpp"
#include "hochbv/structural_map.hpp"

namespace hochbv {

/// Prefactor of the bracket built from a degree −1 operator D:
/// [f,g] = s·(D(f∪g) − D(f)∪g − (−1)^{|f|} f∪D(g)).
enum class BracketConvention {
  Lemma32,       // s = (−1)^{(|f|−1)|g|}
  BvDefinition,  // s = (−1)^{|f|+1}
};
std::string convention_name(BracketConvention c);
/// Accepts "lemma-3-2" and "bv-definition".
std::optional<BracketConvention> parse_convention(std::string_view s);

/// Checks balancedness, the bimodule-morphism property, associativity and
/// unitality (including 1_M ∈ H⁰) by basis enumeration, and records the
/// outcome in s.status and s.validation.
VerificationReport validate_structural_map(StructuralMap& s);

bool is_dual_of_regular(const Algebra& a, const Bimodule& m);

/// B̄: C^{n+1}(A,A*) → C^n(A,A*).
Matrix bar_B_matrix(const Algebra& a, std::size_t n);
/// Throws UnsupportedCoefficients unless m is A*, MalformedInput in degree 0.
Cochain bar_B(const Algebra& a, const Bimodule& m, const Cochain& f);

/// φ(z)(f) = f(a₁⊗…⊗aₙ)(x) for z = x⊗a₁⊗…⊗aₙ, extended bilinearly.
Scalar phi_pairing(const Algebra& a, const Chain& z, const Cochain& f);
VerificationReport verify_lemma_2_1(const Algebra& a, std::size_t max_n,
                                    const Caps& caps = {});

/// (f ∪_ψ g)(a₁…a_{n+m}) = ψ(f(a₁…aₙ) ⊗ g(a_{n+1}…)). Throws
/// UnvalidatedStructuralMap unless ψ passed validation or the caller opts in.
Cochain cup_psi(const StructuralMap& s, const Cochain& f, const Cochain& g,
                bool allow_unvalidated = false);
/// Cup product on C^•(A,A).
Cochain cup_product(const Algebra& a, const Cochain& f, const Cochain& g);
/// g ∘̄ f: f inserted into the slots i = 1…|g| of g with sign
/// (−1)^{(i−1)(|f|−1)}. Coefficients must be A; needs |f|+|g| ≥ 1.
Cochain circle_product(const Algebra& a, const Cochain& g, const Cochain& f);
/// f∘̄g − (−1)^{(|f|−1)(|g|−1)} g∘̄f.
Cochain circle_bracket(const Algebra& a, const Cochain& f, const Cochain& g);

/// Cohomology through a fixed degree with a cochain-level product and a
/// degree −1 operator; everything else is derived at class level.
class BVCalculus {
 public:
  using Product = std::function<Cochain(const Cochain&, const Cochain&)>;
  using Operator = std::function<Cochain(const Cochain&)>;

  BVCalculus(std::string name, std::vector<CohomologySpace> spaces, std::size_t module_dim,
             Product product, Operator delta, Vector unit);

  const std::string& name() const noexcept { return name_; }
  std::size_t max_degree() const noexcept { return spaces_.size() - 1; }
  std::size_t module_dim() const noexcept { return module_dim_; }
  const CohomologySpace& space(std::size_t n) const;
  const Field& field() const { return spaces_.front().field(); }

  Cochain representative(const CohomologyClass& c) const;
  CohomologyClass reduce(const Cochain& f) const;
  CohomologyClass zero(std::size_t n) const;
  std::optional<CohomologyClass> unit() const;

  Cochain product_cochain(const Cochain& f, const Cochain& g) const { return product_(f, g); }
  /// Zero cochain of degree −1 is represented by nullopt.
  std::optional<Cochain> delta_cochain(const Cochain& f) const;
  std::optional<Cochain> bracket_cochain(const Cochain& f, const Cochain& g,
                                         BracketConvention c) const;

  CohomologyClass product(const CohomologyClass& f, const CohomologyClass& g) const;
  std::optional<CohomologyClass> delta(const CohomologyClass& f) const;
  std::optional<CohomologyClass> bracket(const CohomologyClass& f, const CohomologyClass& g,
                                         BracketConvention c) const;

 private:
  std::string name_;
  std::vector<CohomologySpace> spaces_;
  std::size_t module_dim_;
  Product product_;
  Operator delta_;
  Vector unit_;
};

/// H^•(A,A*) with ∪_ψ and B̄, through max_degree.
BVCalculus psi_calculus(const StructuralMap& s, std::size_t max_degree,
                        const Caps& caps = {}, bool allow_unvalidated = false);

struct SuiteBudget {
  std::size_t max_degree = 2;  // classes live in degrees ≤ this
  std::size_t pair_degree = 3;    // |f|+|g| for products, brackets, antisymmetry
  std::size_t triple_degree = 3;  // |f|+|g|+|h| for associativity, Jacobi, Poisson
};

/// Class-level checks of the Gerstenhaber and BV identities on basis
/// classes within the budget.
VerificationReport verify_gerstenhaber_bv(const BVCalculus& calc, BracketConvention conv,
                                          const SuiteBudget& budget);

/// Full suite on H^•_ψ(A,A*): structural-map axioms, Leibniz, B̄ vs d,
/// then verify_gerstenhaber_bv.
VerificationReport verify_psi_structure(StructuralMap& s, BracketConvention conv,
                                        const SuiteBudget& budget, const Caps& caps = {},
                                        bool allow_unvalidated = false);

}  // namespace hochbv
