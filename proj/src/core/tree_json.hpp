#ifndef BUGFIX_CORE_TREE_JSON_HPP
#define BUGFIX_CORE_TREE_JSON_HPP

#include <string>

#include <json.hpp>

#include "node.hpp"
#include "registry.hpp"

namespace bugfix {

// Parses a JSON tree document against the registry.  Rejections carry
// a JSON-path diagnostic such as `$.fields.args[1].construct`.  Nodes
// lacking ids are numbered in document order, continuing after the
// largest explicit id.
Tree decode_tree(const Registry& registry, const std::string& json_text);

// Decodes one node object (no id numbering, no parent wiring); `path`
// prefixes diagnostics, `$` at the root.
NodePtr decode_node_json(const Registry& registry, const nlohmann::json& doc,
                         const std::string& path);

// Canonical encoding: keys in the order construct, id, span, value,
// fields; fields in declaration order; compact separators.  With
// `with_identity` false, ids and spans are left out (the structural
// form used by seed ground truth).
nlohmann::ordered_json node_to_json(const Node& node, bool with_identity = true);
std::string encode_node(const Node& node, bool with_identity = true);
std::string encode_tree(const Tree& tree);

} // namespace bugfix

#endif
