#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hochbv/algebra.hpp"
#include "hochbv/quiver.hpp"
#include "hochbv/structural_map.hpp"

// Sectioned text input. A section starts with a header such as `[basis]`;
// content may follow on the header line and on the lines after it. `#`
// starts a comment.
//
//   algebra:  [field] rational | prime <p>
//             [basis] <labels>
//             [unit]  <coeff>*<label> + ...
//             [mult]  <i> <j> <k> <p/q>      one entry per line, absent = 0
//   quiver:   [vertices] <names>
//             [arrow] <name> <source> <target>
//             [relation] <arrow names in traversal order>
//   form:     [form] d rows of d entries
//   psi:      [psi] <i> <j> <k> <p/q>, [unit] as above
//
// In [mult] and [psi], i j k name basis elements; a token that is not a
// label but is an integer below d is read as an index.

namespace hochbv {

struct InputFile {
  std::string source;
  Field field;
  Algebra algebra;
  std::optional<MonomialPresentation> quiver;
  std::optional<Matrix> form;
};

/// "rational", "Q", "prime 7", "prime:7", "F_7" or "7".
Field parse_field(std::string_view text);

/// Throws ParseError with line and column for syntax and name errors. When
/// `field` is given, rational entries are mapped into it; a file that
/// declares a different prime is rejected.
InputFile parse_input(std::string_view text, const std::string& source,
                      std::optional<Field> field = std::nullopt,
                      std::size_t path_cap = kDefaultPathCap);
InputFile load_input(const std::string& path, std::optional<Field> field = std::nullopt,
                     std::size_t path_cap = kDefaultPathCap);

/// A file holding only a [form] section (and optionally [field]).
Matrix parse_form(std::string_view text, const std::string& source, const Algebra& a);
Matrix load_form(const std::string& path, const Algebra& a);

/// Custom structural map on A*. Labels may be written with or without ^∨.
StructuralMap parse_structural_map(std::string_view text, const std::string& source,
                                   const Algebra& a);
StructuralMap load_structural_map(const std::string& path, const Algebra& a);

/// Inverse of parse_input for algebra files.
std::string write_algebra(const Algebra& a, const std::optional<Matrix>& form = std::nullopt);

}  // namespace hochbv
