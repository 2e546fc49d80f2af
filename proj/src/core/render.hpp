#ifndef BUGFIX_CORE_RENDER_HPP
#define BUGFIX_CORE_RENDER_HPP

#include <string>

#include "node.hpp"
#include "registry.hpp"

namespace bugfix {

// Renders a tree to source text using the syntax rules of `language`.
// Every construct reached must have a rule; otherwise NotFound.
std::string render_tree(const Registry& registry, const Node& root, const std::string& language);

} // namespace bugfix

#endif
