#include "hochbv/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hochbv/errors.hpp"
#include "hochbv/fleet.hpp"

namespace hochbv {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

struct Line {
  std::vector<Token> tokens;
  std::string raw;
  int line = 0;
  int col = 0;  // column of raw[0]
};

struct Section {
  std::string name;
  int line = 0;
  int col = 0;
  std::vector<Line> lines;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

Line make_line(std::string_view text, int line, int col) {
  Line l{{}, std::string(text), line, col};
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start)
      l.tokens.push_back({std::string(text.substr(start, i - start)), line,
                          col + static_cast<int>(start)});
  }
  return l;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      std::size_t first = 0;
      while (first < line.size() && is_space(line[first])) ++first;
      if (first < line.size()) {
        if (line[first] == '[') {
          std::size_t close = line.find(']', first);
          if (close == std::string_view::npos)
            error(line_no, static_cast<int>(first) + 1, "unterminated section header");
          std::string name(line.substr(first + 1, close - first - 1));
          sections_.push_back({name, line_no, static_cast<int>(first) + 1, {}});
          Line rest = make_line(line.substr(close + 1), line_no, static_cast<int>(close) + 2);
          if (!rest.tokens.empty()) sections_.back().lines.push_back(std::move(rest));
        } else {
          if (sections_.empty())
            error(line_no, static_cast<int>(first) + 1, "content before the first section header");
          sections_.back().lines.push_back(make_line(line, line_no, 1));
        }
      }
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  [[noreturn]] void error(int line, int col, const std::string& what) const {
    throw ParseError(source_, line, col, what);
  }
  [[noreturn]] void error(const Token& t, const std::string& what) const {
    error(t.line, t.col, what);
  }

  void allow(const std::set<std::string>& names) const {
    for (const auto& s : sections_)
      if (!names.count(s.name)) error(s.line, s.col, "unknown section [" + s.name + "]");
  }

  std::vector<const Section*> all(const std::string& name) const {
    std::vector<const Section*> out;
    for (const auto& s : sections_)
      if (s.name == name) out.push_back(&s);
    return out;
  }

  const Section* one(const std::string& name) const {
    auto v = all(name);
    if (v.size() > 1) error(v[1]->line, v[1]->col, "repeated section [" + name + "]");
    return v.empty() ? nullptr : v.front();
  }

  std::vector<Token> tokens(const Section& s) const {
    std::vector<Token> out;
    for (const auto& l : s.lines) out.insert(out.end(), l.tokens.begin(), l.tokens.end());
    return out;
  }

  // Field declared in the file, reconciled with the requested one.
  void resolve_field(std::optional<Field> requested) {
    declared_ = Field::rationals();
    if (const Section* s = one("field")) {
      auto t = tokens(*s);
      if (t.empty()) error(s->line, s->col, "empty [field] section");
      std::string joined;
      for (const auto& x : t) joined += (joined.empty() ? "" : " ") + x.text;
      try {
        declared_ = parse_field(joined);
      } catch (const MalformedInput& e) {
        error(t.front(), e.what());
      }
      if (requested && !declared_.is_rational() && *requested != declared_)
        error(t.front(), "file declares " + declared_.name() + " but " + requested->name() +
                             " was requested");
    }
    field_ = requested ? *requested : declared_;
  }

  Scalar scalar(const Token& t) const {
    try {
      Scalar s = Scalar::parse(declared_, t.text);
      if (declared_ == field_) return s;
      return Scalar::from_rational(field_, s.rational());
    } catch (const MalformedInput& e) {
      error(t, e.what());
    }
  }

  static std::size_t label_index(const std::vector<std::string>& labels, std::string_view s) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return i;
    return labels.size();
  }

  std::size_t basis_element(const Token& t, const std::vector<std::string>& labels,
                            bool dual_ok = false) const {
    std::string_view s = t.text;
    std::size_t i = label_index(labels, s);
    if (i == labels.size() && dual_ok && s.ends_with("^∨"))
      i = label_index(labels, s.substr(0, s.size() - std::string_view("^∨").size()));
    if (i < labels.size()) return i;
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size() && v < labels.size()) return v;
    error(t, "unknown basis element '" + t.text + "'");
  }

  // <coeff>*<label> + ... on the lines of one section.
  Vector combination(const Section& s, const std::vector<std::string>& labels,
                     bool dual_ok = false) const {
    Vector out = zero_vector(field_, labels.size());
    bool first = true;
    for (const auto& l : s.lines) {
      const std::string& r = l.raw;
      std::size_t i = 0;
      while (true) {
        while (i < r.size() && is_space(r[i])) ++i;
        if (i == r.size()) break;
        bool negative = false, had_sign = false;
        while (i < r.size() && (r[i] == '+' || r[i] == '-' || is_space(r[i]))) {
          if (r[i] == '-') negative = !negative;
          if (r[i] != ' ' && r[i] != '\t') had_sign = true;
          ++i;
        }
        std::size_t start = i;
        while (i < r.size() && !is_space(r[i]) && r[i] != '+' && r[i] != '-') ++i;
        Token term{r.substr(start, i - start), l.line, l.col + static_cast<int>(start)};
        if (term.text.empty()) error(term, "expected a term");
        if (!first && !had_sign) error(term, "expected '+' or '-' before '" + term.text + "'");
        first = false;
        Scalar c = Scalar::one(field_);
        Token label = term;
        if (auto star = term.text.find('*'); star != std::string::npos) {
          c = scalar(Token{term.text.substr(0, star), term.line, term.col});
          label = Token{term.text.substr(star + 1), term.line, term.col + static_cast<int>(star) + 1};
        }
        if (negative) c = -c;
        out[basis_element(label, labels, dual_ok)] += c;
      }
    }
    if (first) error(s.line, s.col, "empty [" + s.name + "] section");
    return out;
  }

  std::vector<Entry3> entries(const Section& s, const std::vector<std::string>& labels,
                              bool dual_ok) const {
    std::vector<Entry3> out;
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& l : s.lines) {
      if (l.tokens.size() != 4)
        error(l.tokens.front(), "expected '<i> <j> <k> <coefficient>', got " +
                                    std::to_string(l.tokens.size()) + " tokens");
      std::size_t i = basis_element(l.tokens[0], labels, dual_ok);
      std::size_t j = basis_element(l.tokens[1], labels, dual_ok);
      std::size_t k = basis_element(l.tokens[2], labels, dual_ok);
      if (!seen.insert({i, j, k}).second) error(l.tokens.front(), "repeated entry");
      out.emplace_back(i, j, k, scalar(l.tokens[3]));
    }
    return out;
  }

  Matrix form(const Section& s, std::size_t d) const {
    if (s.lines.size() != d)
      error(s.line, s.col, "form needs " + std::to_string(d) + " rows, got " +
                               std::to_string(s.lines.size()));
    MatrixBuilder b(field_, d, d);
    for (std::size_t r = 0; r < d; ++r) {
      const auto& t = s.lines[r].tokens;
      if (t.size() != d)
        error(t.front(), "form row needs " + std::to_string(d) + " entries, got " +
                             std::to_string(t.size()));
      for (std::size_t c = 0; c < d; ++c) b.add(r, c, scalar(t[c]));
    }
    return std::move(b).build();
  }

  MonomialPresentation quiver() const {
    MonomialPresentation p;
    const Section* vs = one("vertices");
    for (const auto& t : tokens(*vs)) {
      if (label_index(p.quiver.vertices, t.text) < p.quiver.vertices.size())
        error(t, "repeated vertex '" + t.text + "'");
      p.quiver.vertices.push_back(t.text);
    }
    if (p.quiver.vertices.empty()) error(vs->line, vs->col, "no vertices");
    std::vector<std::string> arrow_names;
    for (const Section* s : all("arrow"))
      for (const auto& l : s->lines) {
        if (l.tokens.size() != 3) error(l.tokens.front(), "expected '<name> <source> <target>'");
        const auto& t = l.tokens;
        if (label_index(arrow_names, t[0].text) < arrow_names.size())
          error(t[0], "repeated arrow '" + t[0].text + "'");
        if (label_index(p.quiver.vertices, t[0].text) < p.quiver.vertices.size())
          error(t[0], "arrow '" + t[0].text + "' has the name of a vertex");
        Arrow a{t[0].text, 0, 0};
        for (int e = 1; e <= 2; ++e) {
          std::size_t v = label_index(p.quiver.vertices, t[e].text);
          if (v == p.quiver.vertices.size()) error(t[e], "unknown vertex '" + t[e].text + "'");
          (e == 1 ? a.source : a.target) = v;
        }
        arrow_names.push_back(a.name);
        p.quiver.arrows.push_back(a);
      }
    for (const Section* s : all("relation"))
      for (const auto& l : s->lines) {
        std::vector<std::string> rel;
        for (const auto& t : l.tokens) {
          std::size_t i = label_index(arrow_names, t.text);
          if (i == arrow_names.size()) error(t, "unknown arrow '" + t.text + "' in relation");
          if (!rel.empty()) {
            const Arrow& prev = p.quiver.arrows[label_index(arrow_names, rel.back())];
            if (prev.target != p.quiver.arrows[i].source)
              error(t, "relation is not a path: '" + rel.back() + "' does not end where '" +
                           t.text + "' starts");
          }
          rel.push_back(t.text);
        }
        if (rel.size() < 2) error(l.tokens.front(), "relations need at least two arrows");
        p.relations.push_back(std::move(rel));
      }
    p.validate();
    return p;
  }

  const Field& field() const { return field_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Section> sections_;
  Field declared_, field_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Field parse_field(std::string_view text) {
  std::string s(text);
  if (s == "rational" || s == "Q") return Field::rationals();
  for (std::string_view prefix : {"prime ", "prime:", "F_"})
    if (s.starts_with(prefix)) s = s.substr(prefix.size());
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw MalformedInput("unknown field '" + std::string(text) + "'; use rational or prime <p>");
  return Field::prime(p);
}

InputFile parse_input(std::string_view text, const std::string& source,
                      std::optional<Field> field, std::size_t path_cap) {
  Parser p(text, source);
  p.allow({"field", "basis", "unit", "mult", "vertices", "arrow", "relation", "form"});
  p.resolve_field(field);
  const Section* basis = p.one("basis");
  const Section* vertices = p.one("vertices");
  if (basis && vertices)
    p.error(vertices->line, vertices->col, "a file holds either [basis] or [vertices], not both");
  if (!basis && !vertices) p.error(1, 1, "missing [basis] or [vertices] section");

  InputFile out{source, p.field(), {}, std::nullopt, std::nullopt};
  if (basis) {
    for (const char* s : {"arrow", "relation"})
      if (const auto v = p.all(s); !v.empty())
        p.error(v.front()->line, v.front()->col, std::string("[") + s + "] needs a quiver file");
    std::vector<std::string> labels;
    for (const auto& t : p.tokens(*basis)) {
      if (Parser::label_index(labels, t.text) < labels.size())
        p.error(t, "repeated basis label '" + t.text + "'");
      labels.push_back(t.text);
    }
    if (labels.empty()) p.error(basis->line, basis->col, "empty basis");
    const Section* unit = p.one("unit");
    if (!unit) p.error(basis->line, basis->col, "missing [unit] section");
    Vector u = p.combination(*unit, labels);
    std::vector<Entry3> entries;
    for (const Section* s : p.all("mult")) {
      auto e = p.entries(*s, labels, false);
      entries.insert(entries.end(), e.begin(), e.end());
    }
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& [i, j, k, c] : entries)
      if (!seen.insert({i, j, k}).second)
        throw ParseError(source, p.all("mult").back()->line, 1, "repeated entry across [mult] sections");
    out.algebra = make_algebra(p.field(), labels, u, entries);
  } else {
    for (const char* s : {"unit", "mult"})
      if (const auto v = p.all(s); !v.empty())
        p.error(v.front()->line, v.front()->col, std::string("[") + s + "] needs an algebra file");
    MonomialPresentation q = p.quiver();
    Algebra a = path_algebra(q, path_cap);
    out.algebra = p.field().is_rational() ? a : change_field(a, p.field());
    out.quiver = std::move(q);
  }
  if (const Section* f = p.one("form")) out.form = p.form(*f, out.algebra.dim());
  return out;
}

InputFile load_input(const std::string& path, std::optional<Field> field, std::size_t path_cap) {
  return parse_input(read_file(path), path, field, path_cap);
}

Matrix parse_form(std::string_view text, const std::string& source, const Algebra& a) {
  Parser p(text, source);
  p.allow({"field", "form"});
  p.resolve_field(a.field());
  const Section* f = p.one("form");
  if (!f) p.error(1, 1, "missing [form] section");
  return p.form(*f, a.dim());
}

Matrix load_form(const std::string& path, const Algebra& a) {
  return parse_form(read_file(path), path, a);
}

StructuralMap parse_structural_map(std::string_view text, const std::string& source,
                                   const Algebra& a) {
  Parser p(text, source);
  p.allow({"field", "psi", "unit"});
  p.resolve_field(a.field());
  const Section* unit = p.one("unit");
  if (!unit) p.error(1, 1, "missing [unit] section");
  const std::size_t d = a.dim();
  StructuralMap s{.name = "custom", .algebra = a, .module = dual_bimodule(a, regular_bimodule(a)),
                  .psi = std::vector<std::vector<Vector>>(d, std::vector<Vector>(d, zero_vector(a.field(), d))),
                  .unit = p.combination(*unit, a.labels(), true)};
  for (const Section* sec : p.all("psi"))
    for (const auto& [i, j, k, c] : p.entries(*sec, a.labels(), true)) s.psi[i][j][k] += c;
  return s;
}

StructuralMap load_structural_map(const std::string& path, const Algebra& a) {
  StructuralMap s = parse_structural_map(read_file(path), path, a);
  s.name = path;
  return s;
}

std::string write_algebra(const Algebra& a, const std::optional<Matrix>& form) {
  std::ostringstream out;
  const auto& L = a.labels();
  const Field& f = a.field();
  out << "[field] " << (f.is_rational() ? "rational" : "prime " + std::to_string(f.modulus)) << "\n";
  out << "[basis]";
  for (const auto& l : L) out << ' ' << l;
  out << "\n[unit] ";
  bool first = true;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Scalar& c = a.unit()[i];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = cs.front() == '-';
    if (neg) cs.erase(0, 1);
    if (!first) out << (neg ? " - " : " + ");
    else if (neg) out << "-";
    out << cs << '*' << L[i];
    first = false;
  }
  out << "\n[mult]\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!a.constant(i, j, k).is_zero())
          out << L[i] << ' ' << L[j] << ' ' << L[k] << ' ' << a.constant(i, j, k).to_string() << "\n";
  if (form) {
    out << "[form]\n";
    for (std::size_t r = 0; r < form->rows(); ++r) {
      for (std::size_t c = 0; c < form->cols(); ++c) out << (c ? " " : "") << form->at(r, c).to_string();
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace hochbv
