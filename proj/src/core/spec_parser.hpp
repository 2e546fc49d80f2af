#ifndef BUGFIX_CORE_SPEC_PARSER_HPP
#define BUGFIX_CORE_SPEC_PARSER_HPP

#include <string>

#include "spec_ast.hpp"

namespace bugfix {

// Parses a .bugfix unit.  `unit_name` is a label for diagnostics.
// Enforces unit invariants (unique construct and pattern names, one
// syntax rule per construct/language pair, declared-name hygiene in
// patterns) and throws SyntaxError with a 1-based position otherwise.
SpecUnit parse_spec(const std::string& text, const std::string& unit_name = "");

} // namespace bugfix

#endif
