#ifndef BUGFIX_CORE_MINILANG_HPP
#define BUGFIX_CORE_MINILANG_HPP

#include <string>

#include "node.hpp"
#include "registry.hpp"

namespace bugfix {

// Parses MiniLang source into a tree over the given registry (which
// must define the catalog constructs).  Nodes carry half-open byte
// spans excluding grouping parentheses; ids run 1..n in document
// order.  Throws SyntaxError on malformed input.
Tree parse_minilang(const Registry& registry, const std::string& source);

} // namespace bugfix

#endif
