#ifndef BUGFIX_CORE_SPEC_PRINTER_HPP
#define BUGFIX_CORE_SPEC_PRINTER_HPP

#include <string>

#include "spec_ast.hpp"

namespace bugfix {

// Canonical pretty-printer: ASCII operators, 4-space indentation, one
// declaration per block, single-line templates.  parse_spec of the
// output reproduces the unit; printing is a fixpoint.
std::string render_spec(const SpecUnit& unit);

std::string render_pattern(const Pattern& pattern);
std::string render_condition(const Condition& condition);
std::string render_term(const Term& term);

} // namespace bugfix

#endif
