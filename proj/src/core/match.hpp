#ifndef BUGFIX_CORE_MATCH_HPP
#define BUGFIX_CORE_MATCH_HPP

#include <string>
#include <utility>
#include <vector>

#include "node.hpp"
#include "registry.hpp"
#include "spec_ast.hpp"

namespace bugfix {

// One way a pattern applies: the subject node plus one node per
// metavariable, in declaration order.
struct Match {
    const Node* subject = nullptr;
    std::string subject_name;
    std::vector<std::pair<std::string, const Node*>> bindings;

    // Looks up the subject binder or a metavariable.
    const Node* bound(const std::string& name) const;
};

// All matches of `pattern` in `tree`: subjects are nodes conforming to
// the subject type, metavariables range over the subject's strict
// descendants and bind nodes conforming to their declared types, and
// every where-condition holds.  Results are ordered by subject id,
// then by the bound ids in metavariable declaration order.
std::vector<Match> match_pattern(const Registry& registry, const Tree& tree,
                                 const Pattern& pattern);

} // namespace bugfix

#endif
