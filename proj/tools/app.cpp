#include "app.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hochbv/bv.hpp"
#include "hochbv/errors.hpp"
#include "hochbv/frobenius.hpp"
#include "hochbv/io.hpp"
#include "json.hpp"

namespace hochbv::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string input;
  std::string field;
  std::string coefficients = "self";
  std::size_t max_degree = 3;
  std::string psi;
  std::string psi_file;
  std::string form;
  std::string bracket = "lemma-3-2";
  std::string suite = "auto";
  std::string out;
  std::size_t cap = Caps{}.max_columns;
  std::size_t path_cap = kDefaultPathCap;
  bool json_stdout = false;
  bool homology = false;
  bool representatives = false;
  bool allow_unvalidated = false;
};

// Input or configuration problem; exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  InputFile file;
  std::optional<Matrix> form;
};

Loaded load(const Config& c) {
  std::optional<Field> f;
  if (!c.field.empty()) f = parse_field(c.field);
  Loaded l{load_input(c.input, f, c.path_cap), std::nullopt};
  l.form = l.file.form;
  if (!c.form.empty()) l.form = load_form(c.form, l.file.algebra);
  return l;
}

Caps caps_of(const Config& c) {
  Caps caps;
  caps.max_columns = c.cap;
  return caps;
}

void emit(const Config& c, const json& doc, const std::string& text, std::ostream& out) {
  const std::string dumped = doc.dump(2) + "\n";
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + c.out);
    f << dumped;
  }
  out << (c.json_stdout ? dumped : text);
}

json report_json(const VerificationReport& r) { return json::parse(r.to_json()); }

int describe(const Config& c, std::ostream& out) {
  Loaded l = load(c);
  const Algebra& a = l.file.algebra;
  VerificationReport rep = validate_algebra(a);
  std::string labels;
  for (const auto& s : a.labels()) labels += (labels.empty() ? "" : ", ") + s;
  auto status = [&](const char* name) {
    const Check* ch = rep.find(name);
    return std::string(ch && !ch->pass ? "fail" : "pass");
  };
  std::ostringstream text;
  text << "source: " << c.input << "\n";
  text << "field: " << a.field().name() << "\n";
  text << "dim " << a.dim() << ", basis " << labels << "; associative: " << status("associativity")
       << "; unit: " << status("unit") << "\n";
  text << "unit: " << format_combination(a.unit(), a.labels()) << "\n";
  json doc;
  doc["command"] = "describe";
  doc["input"] = c.input;
  doc["field"] = a.field().name();
  doc["dim"] = a.dim();
  doc["basis"] = a.labels();
  doc["unit"] = format_combination(a.unit(), a.labels());
  if (l.file.quiver) {
    const auto& q = *l.file.quiver;
    text << "quiver: " << q.quiver.vertices.size() << " vertices, " << q.quiver.arrows.size()
         << " arrows, " << q.relations.size() << " relations\n";
    doc["quiver"] = {{"vertices", q.quiver.vertices.size()},
                     {"arrows", q.quiver.arrows.size()},
                     {"relations", q.relations.size()}};
  }
  if (l.form) {
    FormKind k = classify_form(a, *l.form);
    text << "form: " << form_kind_name(k) << "\n";
    doc["form"] = form_kind_name(k);
  }
  text << rep.to_text();
  text << "status: " << (rep.passed() ? "pass" : "fail") << "\n";
  doc["status"] = rep.passed() ? "pass" : "fail";
  doc["report"] = report_json(rep);
  emit(c, doc, text.str(), out);
  return rep.passed() ? 0 : 1;
}

Bimodule coefficients(const Config& c, const Loaded& l) {
  const Algebra& a = l.file.algebra;
  if (c.coefficients == "self") return regular_bimodule(a);
  if (c.coefficients == "dual") return dual_bimodule(a, regular_bimodule(a));
  if (c.coefficients == "twisted") {
    if (!l.form) throw ConfigError("twisted coefficients need a form (--form or a [form] section)");
    return twisted_bimodule(a, nakayama(a, *l.form));
  }
  throw ConfigError("unknown coefficients '" + c.coefficients + "'; use self, dual or twisted");
}

std::vector<std::size_t> dims(const std::vector<Subquotient>& spaces) {
  std::vector<std::size_t> out;
  for (const auto& s : spaces) out.push_back(s.dim());
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

int cohomology(const Config& c, std::ostream& out) {
  Loaded l = load(c);
  const Algebra& a = l.file.algebra;
  const Bimodule m = coefficients(c, l);
  const Caps caps = caps_of(c);
  auto H = cohomology_spaces(a, m, c.max_degree, caps);
  const std::string mname = c.coefficients == "self" ? "A" : c.coefficients == "dual" ? "A*" : "A_N";

  std::ostringstream text;
  json doc;
  doc["command"] = "cohomology";
  doc["input"] = c.input;
  doc["field"] = a.field().name();
  doc["coefficients"] = c.coefficients;
  doc["status"] = "pass";
  doc["cohomology"] = dims(H);
  text << "H^n(A," << mname << ") over " << a.field().name() << "\n";
  for (std::size_t n = 0; n < H.size(); ++n) text << "  n=" << n << "  dim " << H[n].dim() << "\n";

  std::vector<std::string> notes;
  if (c.coefficients == "dual") {
    auto self = dims(cohomology_spaces(a, regular_bimodule(a), c.max_degree, caps));
    if (self == dims(H)) {
      notes.push_back("dims agree with H^n(A,A)");
    } else {
      notes.push_back("dims differ from H^n(A,A) = (" + join(self) +
                      "), so A* is not isomorphic to A as a bimodule and A has no symmetric Frobenius form");
    }
    if (l.form) notes.push_back("form: " + form_kind_name(classify_form(a, *l.form)));
  }
  if (c.homology) {
    if (c.coefficients == "dual") throw ConfigError("homology is computed with coefficients in A or A_N");
    auto HH = homology_spaces(a, m, c.max_degree, caps);
    doc["homology"] = dims(HH);
    text << "HH_n(A," << mname << ")\n";
    for (std::size_t n = 0; n < HH.size(); ++n) text << "  n=" << n << "  dim " << HH[n].dim() << "\n";
  }
  if (c.representatives) {
    json reps = json::object();
    for (std::size_t n = 0; n < H.size(); ++n) {
      json list = json::array();
      text << "representatives of H^" << n << ":\n";
      for (const auto& r : H[n].representatives()) {
        list.push_back(format_vector(r));
        text << "  " << format_vector(r) << "\n";
      }
      reps[std::to_string(n)] = list;
    }
    doc["representatives"] = reps;
  }
  for (const auto& n : notes) text << "note: " << n << "\n";
  doc["notes"] = notes;
  emit(c, doc, text.str(), out);
  return 0;
}

std::vector<BracketConvention> conventions(const Config& c) {
  if (c.bracket == "both") return {BracketConvention::Lemma32, BracketConvention::BvDefinition};
  auto conv = parse_convention(c.bracket);
  if (!conv) throw ConfigError("unknown bracket sign '" + c.bracket + "'; use lemma-3-2, bv-definition or both");
  return {*conv};
}

std::optional<StructuralMap> structural_map(const Config& c, const Loaded& l) {
  const Algebra& a = l.file.algebra;
  if (c.psi.empty()) return std::nullopt;
  if (c.psi == "monomial") {
    if (!l.file.quiver) throw ConfigError("monomial psi needs a quiver input");
    return monomial_psi(*l.file.quiver, c.path_cap);
  }
  if (c.psi == "symmetric" || c.psi == "frobenius") {
    if (!l.form) throw ConfigError(c.psi + " psi needs a form (--form or a [form] section)");
    if (c.psi == "symmetric") return symmetric_psi(a, *l.form);
    return frobenius_psi(a, *l.form, nakayama(a, *l.form));
  }
  if (c.psi == "custom") {
    if (c.psi_file.empty()) throw ConfigError("custom psi needs --psi-file");
    return load_structural_map(c.psi_file, a);
  }
  throw ConfigError("unknown psi source '" + c.psi + "'; use monomial, symmetric, frobenius or custom");
}

int verify(const Config& c, std::ostream& out) {
  Loaded l = load(c);
  const Algebra& a = l.file.algebra;
  const Caps caps = caps_of(c);
  const auto convs = conventions(c);
  auto psi = structural_map(c, l);

  std::set<std::string> suites;
  if (c.suite == "auto") {
    if (psi) suites.insert("structural");
    suites.insert("pairing");
    if (l.form) suites.insert("frobenius");
  } else {
    std::stringstream ss(c.suite);
    for (std::string s; std::getline(ss, s, ',');) {
      if (s == "all") {
        suites.insert({"structural", "pairing", "frobenius"});
      } else if (s == "structural" || s == "pairing" || s == "frobenius") {
        suites.insert(s);
      } else {
        throw ConfigError("unknown suite '" + s + "'; use structural, pairing, frobenius, all or auto");
      }
    }
  }
  if (suites.count("structural") && !psi) throw ConfigError("the structural suite needs --psi");
  if (suites.count("frobenius") && !l.form) throw ConfigError("the frobenius suite needs a form");

  std::vector<VerificationReport> reports;
  const SuiteBudget budget{c.max_degree, 3, 3};
  auto tag = [&](BracketConvention conv) {
    return convs.size() > 1 ? convention_name(conv) + ": " : std::string();
  };
  if (suites.count("structural")) {
    for (auto conv : convs) {
      StructuralMap s = *psi;
      VerificationReport r = verify_psi_structure(s, conv, budget, caps, c.allow_unvalidated);
      if (convs.size() > 1) {
        VerificationReport tagged(r.title() + " {" + convention_name(conv) + "}");
        for (const auto& lbl : r.labels()) tagged.add_label(lbl);
        tagged.merge(r);
        r = tagged;
      }
      reports.push_back(std::move(r));
    }
  }
  if (suites.count("pairing")) reports.push_back(verify_lemma_2_1(a, c.max_degree, caps));
  if (suites.count("frobenius")) {
    const Matrix& g = *l.form;
    VerificationReport fr = validate_form(a, g);
    FormKind kind = classify_form(a, g);
    reports.push_back(fr);
    if (kind != FormKind::Invalid) {
      AlgebraEndo n = nakayama(a, g);
      reports.push_back(verify_nakayama(a, g, n));
      reports.push_back(check_z_intertwining(a, g, n));
      reports.push_back(semisimplicity_check(n));
      reports.push_back(verify_twisted_B(a, n, std::min<std::size_t>(c.max_degree, 2), caps));
      if (kind == FormKind::SymmetricFrobenius) {
        VerificationReport cor("HH(A) vs H_psi(A,A*)");
        for (auto conv : convs) cor.merge(verify_corollary_4_1(a, g, c.max_degree, conv, caps), tag(conv));
        reports.push_back(cor);
      }
    }
  }

  bool pass = true;
  json doc;
  doc["command"] = "verify";
  doc["input"] = c.input;
  doc["field"] = a.field().name();
  json list = json::array();
  std::ostringstream text;
  for (const auto& r : reports) {
    pass &= r.passed();
    list.push_back(report_json(r));
    text << r.to_text();
  }
  doc["status"] = pass ? "pass" : "fail";
  doc["reports"] = list;
  text << "status: " << (pass ? "pass" : "fail") << "\n";
  emit(c, doc, text.str(), out);
  return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hochschild (co)homology and BV structure checks over exact fields", "hochbv"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--input,-i", c.input, "algebra or quiver file")->required();
    s->add_option("--field", c.field, "rational or prime <p>; overrides the file");
    s->add_option("--form", c.form, "bilinear form file");
    s->add_option("--out,-o", c.out, "write the JSON report here");
    s->add_flag("--json", c.json_stdout, "print JSON instead of text");
    s->add_option("--path-cap", c.path_cap, "largest path basis to enumerate");
  };
  std::size_t cohomology_max = 3, verify_max = 2;
  auto sized = [&](CLI::App* s, std::size_t& degree) {
    s->add_option("--max-degree", degree, "top degree")->capture_default_str();
    s->add_option("--cap", c.cap, "largest number of cochain coordinates")->capture_default_str();
  };

  auto* d = app.add_subcommand("describe", "validate an algebra and print its basis");
  common(d);
  auto* h = app.add_subcommand("cohomology", "dimensions of H^n and HH_n");
  common(h);
  sized(h, cohomology_max);
  h->add_option("--coefficients", c.coefficients, "self, dual or twisted")->capture_default_str();
  h->add_flag("--homology", c.homology, "also compute HH_n");
  h->add_flag("--representatives", c.representatives, "print cocycle representatives");
  auto* v = app.add_subcommand("verify", "run verification suites");
  common(v);
  sized(v, verify_max);
  v->add_option("--psi", c.psi, "monomial, symmetric, frobenius or custom");
  v->add_option("--psi-file", c.psi_file, "structural map file for --psi custom");
  v->add_option("--bracket-sign", c.bracket, "lemma-3-2, bv-definition or both")->capture_default_str();
  v->add_option("--suite", c.suite, "comma list of structural, pairing, frobenius, all, auto")
      ->capture_default_str();
  v->add_flag("--allow-unvalidated", c.allow_unvalidated,
              "run the identities even when psi fails its axioms");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  c.max_degree = h->parsed() ? cohomology_max : verify_max;

  try {
    if (d->parsed()) return describe(c, out);
    if (h->parsed()) return cohomology(c, out);
    return verify(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InfiniteDimensional& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedCoefficients& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidAutomorphism& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnvalidatedStructuralMap& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotACocycle& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Inconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hochbv::cli
