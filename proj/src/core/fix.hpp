#ifndef BUGFIX_CORE_FIX_HPP
#define BUGFIX_CORE_FIX_HPP

#include "match.hpp"
#include "node.hpp"
#include "registry.hpp"
#include "spec_ast.hpp"

namespace bugfix {

// Applies the pattern's fix to one match, returning a new tree; the
// input tree is untouched.  Right-hand sides read the pre-state.  The
// replacement root takes over the subject's id and span; a bound node
// referenced exactly once, overlapping no other right-hand side, and
// lying inside the replaced region moves in with ids and spans intact,
// while everything else is copied with fresh ids.  Throws on targets
// that collide and on expressions that do not denote a single node.
Tree apply_fix(const Registry& registry, const Tree& tree, const Pattern& pattern,
               const Match& match);

} // namespace bugfix

#endif
