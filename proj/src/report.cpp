#include "hochbv/report.hpp"

#include <json.hpp>
#include <sstream>

namespace hochbv {

const std::string* Witness::get(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

void Check::fail(Witness w) {
  pass = false;
  ++witness_total;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

Check& VerificationReport::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& VerificationReport::add(std::string name, bool pass, std::string note) {
  Check c;
  c.name = std::move(name);
  c.pass = pass;
  c.note = std::move(note);
  return add(std::move(c));
}

void VerificationReport::merge(const VerificationReport& other,
                               const std::string& prefix) {
  for (const auto& l : other.labels_) add_label(l);
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

void VerificationReport::add_label(std::string label) {
  for (const auto& l : labels_)
    if (l == label) return;
  labels_.push_back(std::move(label));
}

bool VerificationReport::passed() const {
  for (const auto& c : checks_)
    if (!c.informational && !c.pass) return false;
  return true;
}

const Check* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["status"] = passed() ? "pass" : "fail";
  j["labels"] = labels_;
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass ? "pass" : "fail";
    if (c.informational) cj["informational"] = true;
    if (!c.convention.empty()) cj["convention"] = c.convention;
    if (!c.note.empty()) cj["note"] = c.note;
    if (!c.pass) {
      cj["failures"] = c.witness_total;
      auto& ws = cj["witnesses"] = nlohmann::ordered_json::array();
      for (const auto& w : c.witnesses) {
        nlohmann::ordered_json wj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : w.fields) wj[k] = v;
        ws.push_back(std::move(wj));
      }
    }
    arr.push_back(std::move(cj));
  }
  return j.dump(indent);
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  if (!title_.empty()) os << "== " << title_ << " ==\n";
  for (const auto& l : labels_) os << "  [" << l << "]\n";
  for (const auto& c : checks_) {
    os << "  " << (c.pass ? "PASS" : "FAIL") << (c.informational ? " (info)" : "")
       << "  " << c.name;
    if (!c.convention.empty()) os << "  {" << c.convention << "}";
    if (!c.note.empty()) os << "  -- " << c.note;
    os << '\n';
    if (!c.pass && !c.witnesses.empty()) {
      const auto& w = c.witnesses.front();
      os << "        witness:";
      for (const auto& [k, v] : w.fields) os << ' ' << k << '=' << v << ';';
      if (c.witness_total > 1) os << " (" << c.witness_total << " failures)";
      os << '\n';
    }
  }
  return os.str();
}

std::string format_combination(std::span<const Scalar> v,
                               const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string label = i < labels.size() ? labels[i] : "#" + std::to_string(i);
    std::string coeff = v[i].to_string();
    bool neg = v[i].field().is_rational() && sgn(v[i].rational()) < 0;
    if (neg) coeff = (-v[i]).to_string();
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (coeff != "1") out += coeff + "*";
    out += label;
  }
  return out.empty() ? "0" : out;
}

std::string format_vector(std::span<const Scalar> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + "]";
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += format_vector(m.row_vector(r));
  }
  return out + "]";
}

}  // namespace hochbv
