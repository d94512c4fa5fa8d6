#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hochbv/matrix.hpp"

namespace hochbv {

/// One counterexample: named fields with exact values rendered as text.
struct Witness {
  std::vector<std::pair<std::string, std::string>> fields;

  Witness& set(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  const std::string* get(std::string_view key) const;
};

struct Check {
  std::string name;
  bool pass = true;
  /// Informational checks are reported but never decide the verdict.
  bool informational = false;
  std::string convention;
  std::string note;
  std::vector<Witness> witnesses;
  std::size_t witness_total = 0;  // failures seen, may exceed witnesses.size()

  static constexpr std::size_t kMaxWitnesses = 32;
  void fail(Witness w);
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string title = {}) : title_(std::move(title)) {}

  Check& add(Check c);
  Check& add(std::string name, bool pass, std::string note = {});
  /// Appends every check of `other`, prefixing names with `prefix`.
  void merge(const VerificationReport& other, const std::string& prefix = {});
  void add_label(std::string label);

  bool passed() const;
  const Check* find(std::string_view name) const;
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& title() const noexcept { return title_; }

  std::string to_json(int indent = 2) const;
  std::string to_text() const;

 private:
  std::string title_;
  std::vector<std::string> labels_;
  std::vector<Check> checks_;
};

/// "2*x - 1/2*y", or "0".
std::string format_combination(std::span<const Scalar> v,
                               const std::vector<std::string>& labels);
/// "[1, 0, -3/2]"
std::string format_vector(std::span<const Scalar> v);
std::string format_matrix(const Matrix& m);

}  // namespace hochbv
