#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hochbv/algebra.hpp"
#include "hochbv/structural_map.hpp"

namespace hochbv {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t vertex_index(std::string_view name) const;
  std::size_t arrow_index(std::string_view name) const;
  /// Throws MalformedInput on dangling endpoints or repeated names.
  void validate() const;
};

/// Path with arrows in traversal order (first arrow traversed first).
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  bool trivial() const noexcept { return arrows.empty(); }
  std::size_t length() const noexcept { return arrows.size(); }
  static Path vertex(std::size_t v) { return {v, v, {}}; }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// kQ/⟨T⟩ with T a set of paths of length ≥ 2, given in traversal order.
struct MonomialPresentation {
  Quiver quiver;
  std::vector<std::vector<std::string>> relations;

  void validate() const;
  std::vector<Path> relation_paths() const;
};

struct PathBasis {
  std::vector<Path> paths;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return paths.size(); }
  std::optional<std::size_t> index_of(const Path& p) const;

 private:
  friend PathBasis enumerate_path_basis(const MonomialPresentation&, std::size_t);
  std::map<Path, std::size_t> index_;
};

/// "e" for a single vertex quiver, "e<vertex>" otherwise, or arrow names
/// joined by '.' in traversal order.
std::string path_label(const Quiver& q, const Path& p);

constexpr std::size_t kDefaultPathCap = 1000;

/// All T-avoiding paths: trivial ones first, then by length, then
/// lexicographically by arrow names. Throws InfiniteDimensional past `cap`.
PathBasis enumerate_path_basis(const MonomialPresentation& p,
                               std::size_t cap = kDefaultPathCap);

/// ω_{/α}: the τ with ω = α∘τ (τ traversed first), if α ends ω.
std::optional<Path> right_quotient(const Path& omega, const Path& alpha);
/// _{β\}ω: the τ with ω = τ∘β (β traversed first), if β starts ω.
std::optional<Path> left_quotient(const Path& omega, const Path& beta);
/// Traverse first, then second; nullopt unless t(first) = s(second).
std::optional<Path> concatenate(const Path& first, const Path& second);

Algebra path_algebra(const MonomialPresentation& p, std::size_t cap = kDefaultPathCap);

/// Bimodule on the dual basis with α.ω^∨.β = (_{β\}ω_{/α})^∨.
Bimodule dual_action_bimodule(const MonomialPresentation& p,
                              std::size_t cap = kDefaultPathCap);

/// Compares dual_action_bimodule with the canonical dual of the regular
/// bimodule under ω ↦ ω^∨. Informational only.
VerificationReport compare_dual_actions(const MonomialPresentation& p,
                                        std::size_t cap = kDefaultPathCap);

/// ψ(ω^∨ ⊗ γ^∨) = (γω)^∨ when t(ω) = s(γ) and γω ∈ P, else 0; unit Σ e_v^∨.
/// Lives on the canonical dual bimodule A*; not validated.
StructuralMap monomial_psi(const MonomialPresentation& p,
                           std::size_t cap = kDefaultPathCap);

}  // namespace hochbv
