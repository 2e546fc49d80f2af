#ifndef BUGFIX_CORE_REVERSE_HPP
#define BUGFIX_CORE_REVERSE_HPP

#include "registry.hpp"
#include "spec_ast.hpp"

namespace bugfix {

// Mechanically inverts a pattern so that applying the original fix
// undoes the reversed one.  Three shapes invert:
//   - updates whose substitutions permute their targets,
//   - instantiation fixes whose fields are all plain metavariables
//     bound from single fields of the subject,
//   - flips between the fixed-value atoms TRUE_LIT, FALSE_LIT, and
//     NULL_LIT.
// The result is named <NAME>_REV, keeps the category, and flips the
// seed flag (the reverse of a repair injects the bug).  Anything else
// raises NotInvertibleError with the reason.
Pattern reverse_pattern(const Registry& registry, const Pattern& pattern);

} // namespace bugfix

#endif
