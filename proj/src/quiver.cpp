#include "hochbv/quiver.hpp"

#include <algorithm>

#include "hochbv/errors.hpp"
#include "hochbv/linalg.hpp"

namespace hochbv {

std::size_t Quiver::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return i;
  throw MalformedInput("unknown vertex '" + std::string(name) + "'");
}

std::size_t Quiver::arrow_index(std::string_view name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  throw MalformedInput("unknown arrow '" + std::string(name) + "'");
}

void Quiver::validate() const {
  if (vertices.empty()) throw MalformedInput("quiver has no vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j])
        throw MalformedInput("duplicate vertex '" + vertices[i] + "'");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i].source >= vertices.size() || arrows[i].target >= vertices.size())
      throw MalformedInput("arrow '" + arrows[i].name + "' has an invalid endpoint");
    if (arrows[i].name.empty() || arrows[i].name.find('.') != std::string::npos)
      throw MalformedInput("invalid arrow name '" + arrows[i].name + "'");
    for (std::size_t j = i + 1; j < arrows.size(); ++j)
      if (arrows[i].name == arrows[j].name)
        throw MalformedInput("duplicate arrow '" + arrows[i].name + "'");
  }
}

void MonomialPresentation::validate() const {
  quiver.validate();
  relation_paths();
}

std::vector<Path> MonomialPresentation::relation_paths() const {
  std::vector<Path> out;
  for (const auto& rel : relations) {
    if (rel.size() < 2)
      throw MalformedInput("relation must have length at least 2");
    Path p;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      std::size_t a = quiver.arrow_index(rel[k]);
      const Arrow& arr = quiver.arrows[a];
      if (k == 0)
        p.source = arr.source;
      else if (quiver.arrows[p.arrows.back()].target != arr.source)
        throw MalformedInput("relation is not a composable path at '" + rel[k] + "'");
      p.arrows.push_back(a);
      p.target = arr.target;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<std::size_t> PathBasis::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string path_label(const Quiver& q, const Path& p) {
  if (p.trivial())
    return q.vertices.size() == 1 ? std::string("e") : "e" + q.vertices[p.source];
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += '.';
    s += q.arrows[p.arrows[k]].name;
  }
  return s;
}

namespace {

bool ends_with(const std::vector<std::size_t>& word, const std::vector<std::size_t>& tail) {
  return tail.size() <= word.size() &&
         std::equal(tail.begin(), tail.end(), word.end() - static_cast<std::ptrdiff_t>(tail.size()));
}

// Shortest closed stretch inside any of the given paths.
std::string shortest_cycle(const Quiver& q, const std::vector<Path>& paths) {
  std::optional<Path> best;
  for (const auto& p : paths) {
    std::vector<std::size_t> verts{p.source};
    for (auto a : p.arrows) verts.push_back(q.arrows[a].target);
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (verts[i] == verts[j]) {
          Path c{verts[i], verts[i],
                 {p.arrows.begin() + static_cast<std::ptrdiff_t>(i),
                  p.arrows.begin() + static_cast<std::ptrdiff_t>(j)}};
          if (!best || c.length() < best->length() ||
              (c.length() == best->length() && path_label(q, c) < path_label(q, *best)))
            best = c;
          break;
        }
  }
  return best ? path_label(q, *best) : std::string("?");
}

}  // namespace

PathBasis enumerate_path_basis(const MonomialPresentation& p, std::size_t cap) {
  if (cap == 0) throw MalformedInput("path cap must be positive");
  p.validate();
  const Quiver& q = p.quiver;
  const auto rels = p.relation_paths();

  PathBasis basis;
  std::vector<Path> level;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) level.push_back(Path::vertex(v));
  auto by_names = [&](const Path& x, const Path& y) {
    return std::lexicographical_compare(
        x.arrows.begin(), x.arrows.end(), y.arrows.begin(), y.arrows.end(),
        [&](std::size_t a, std::size_t b) { return q.arrows[a].name < q.arrows[b].name; });
  };
  bool first = true;
  while (!level.empty()) {
    if (!first) std::sort(level.begin(), level.end(), by_names);
    first = false;
    for (auto& path : level) {
      if (basis.paths.size() == cap)
        throw InfiniteDimensional("path basis exceeds cap " + std::to_string(cap) +
                                  "; unbounded cycle: " + shortest_cycle(q, level));
      basis.index_[path] = basis.paths.size();
      basis.labels.push_back(path_label(q, path));
      basis.paths.push_back(path);
    }
    std::vector<Path> next;
    for (const auto& path : level)
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].source != path.target) continue;
        Path ext = path;
        ext.arrows.push_back(a);
        ext.target = q.arrows[a].target;
        bool bad = std::any_of(rels.begin(), rels.end(), [&](const Path& r) {
          return ends_with(ext.arrows, r.arrows);
        });
        if (!bad) next.push_back(std::move(ext));
      }
    level = std::move(next);
  }
  return basis;
}

std::optional<Path> right_quotient(const Path& omega, const Path& alpha) {
  if (alpha.target != omega.target || !ends_with(omega.arrows, alpha.arrows))
    return std::nullopt;
  Path tau;
  tau.source = omega.source;
  tau.target = alpha.source;
  tau.arrows.assign(omega.arrows.begin(),
                    omega.arrows.end() - static_cast<std::ptrdiff_t>(alpha.length()));
  // a trivial α must sit at t(ω); a nontrivial one fixes its own source
  if (tau.trivial() && tau.source != tau.target) return std::nullopt;
  return tau;
}

std::optional<Path> left_quotient(const Path& omega, const Path& beta) {
  if (beta.source != omega.source || beta.length() > omega.length() ||
      !std::equal(beta.arrows.begin(), beta.arrows.end(), omega.arrows.begin()))
    return std::nullopt;
  Path tau;
  tau.source = beta.target;
  tau.target = omega.target;
  tau.arrows.assign(omega.arrows.begin() + static_cast<std::ptrdiff_t>(beta.length()),
                    omega.arrows.end());
  if (tau.trivial() && tau.source != tau.target) return std::nullopt;
  return tau;
}

std::optional<Path> concatenate(const Path& first, const Path& second) {
  if (first.target != second.source) return std::nullopt;
  Path p{first.source, second.target, first.arrows};
  p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
  return p;
}

Algebra path_algebra(const MonomialPresentation& p, std::size_t cap) {
  PathBasis basis = enumerate_path_basis(p, cap);
  const Field f = Field::rationals();
  const std::size_t d = basis.size();
  std::vector<std::vector<Vector>> c(d, std::vector<Vector>(d, zero_vector(f, d)));
  // e_i·e_j = path j traversed first, then path i
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (auto comp = concatenate(basis.paths[j], basis.paths[i]))
        if (auto k = basis.index_of(*comp)) c[i][j][*k] = Scalar::one(f);
  Vector unit = zero_vector(f, d);
  for (std::size_t v = 0; v < p.quiver.vertices.size(); ++v)
    unit[*basis.index_of(Path::vertex(v))] = Scalar::one(f);
  Algebra a(f, basis.labels, std::move(c), std::move(unit));
  auto rep = validate_algebra(a);
  if (!rep.passed())
    throw Inconsistency("path algebra failed validation:\n" + rep.to_text());
  return a;
}

Bimodule dual_action_bimodule(const MonomialPresentation& p, std::size_t cap) {
  PathBasis basis = enumerate_path_basis(p, cap);
  const Field f = Field::rationals();
  const std::size_t d = basis.size();
  Bimodule m;
  m.kind = Bimodule::Kind::Custom;
  m.name = "P^∨";
  m.field = f;
  for (const auto& l : basis.labels) m.labels.push_back(l + "^∨");
  for (std::size_t i = 0; i < d; ++i) {
    MatrixBuilder left(f, d, d), right(f, d, d);
    for (std::size_t j = 0; j < d; ++j) {
      if (auto q = right_quotient(basis.paths[j], basis.paths[i]))
        if (auto k = basis.index_of(*q)) left.add(*k, j, Scalar::one(f));
      if (auto q = left_quotient(basis.paths[j], basis.paths[i]))
        if (auto k = basis.index_of(*q)) right.add(*k, j, Scalar::one(f));
    }
    m.left.push_back(std::move(left).build());
    m.right.push_back(std::move(right).build());
  }
  return m;
}

VerificationReport compare_dual_actions(const MonomialPresentation& p, std::size_t cap) {
  VerificationReport rep("dual action comparison");
  Algebra a = path_algebra(p, cap);
  Bimodule lit = dual_action_bimodule(p, cap);
  Bimodule can = dual_bimodule(a, regular_bimodule(a));
  Check same{.name = "dual-basis action equals canonical A* under w -> w^v",
             .informational = true};
  Check swapped{.name = "dual-basis action equals canonical A* with sides exchanged",
                .informational = true};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (lit.left[i] != can.left[i])
      same.fail(Witness{}.set("element", a.labels()[i]).set("side", "left"));
    if (lit.right[i] != can.right[i])
      same.fail(Witness{}.set("element", a.labels()[i]).set("side", "right"));
    if (lit.left[i] != can.right[i])
      swapped.fail(Witness{}.set("element", a.labels()[i]).set("side", "left"));
    if (lit.right[i] != can.left[i])
      swapped.fail(Witness{}.set("element", a.labels()[i]).set("side", "right"));
  }
  rep.add(std::move(same));
  rep.add(std::move(swapped));
  // under the right-factor-first product the literal rule is a bimodule
  // over A^op, so these are reported rather than required
  auto bim = validate_bimodule(a, lit);
  for (const auto& c : bim.checks()) {
    Check info = c;
    info.name = "dual-basis action: " + c.name;
    info.informational = true;
    rep.add(std::move(info));
  }
  return rep;
}

StructuralMap monomial_psi(const MonomialPresentation& p, std::size_t cap) {
  PathBasis basis = enumerate_path_basis(p, cap);
  StructuralMap s;
  s.name = "monomial";
  s.algebra = path_algebra(p, cap);
  s.module = dual_bimodule(s.algebra, regular_bimodule(s.algebra));
  const Field f = s.algebra.field();
  const std::size_t d = basis.size();
  s.psi.assign(d, std::vector<Vector>(d, zero_vector(f, d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      // (γω)^∨ with ω = path i traversed first
      if (auto comp = concatenate(basis.paths[i], basis.paths[j]))
        if (auto k = basis.index_of(*comp)) s.psi[i][j][*k] = Scalar::one(f);
  s.unit = zero_vector(f, d);
  for (std::size_t v = 0; v < p.quiver.vertices.size(); ++v)
    s.unit[*basis.index_of(Path::vertex(v))] = Scalar::one(f);
  return s;
}

Vector StructuralMap::apply(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const std::size_t m = module.dim();
  if (x.size() != m || y.size() != m) throw MalformedInput("ψ argument has wrong length");
  Vector out = zero_vector(module.field, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (!y[j].is_zero()) add_scaled(out, x[i] * y[j], psi[i][j]);
  }
  return out;
}

}  // namespace hochbv
