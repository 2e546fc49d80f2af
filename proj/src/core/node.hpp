#ifndef BUGFIX_CORE_NODE_HPP
#define BUGFIX_CORE_NODE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "registry.hpp"
#include "spec_ast.hpp"

namespace bugfix {

// Half-open byte range into the source a node was parsed from.
struct Span {
    std::int64_t begin = 0;
    std::int64_t end = 0;
    bool operator==(const Span&) const = default;
};

class Node;
using NodePtr = std::unique_ptr<Node>;

// One declared field of a node: either a single mandatory child or a
// list of children, never both.
struct FieldSlot {
    std::string name;
    bool is_list = false;
    NodePtr single;
    std::vector<NodePtr> list;
};

class Node {
public:
    explicit Node(std::string construct) : construct_(std::move(construct)) {}

    const std::string& construct() const { return construct_; }

    std::int64_t id = 0;
    std::optional<Span> span;
    std::optional<Value> value;       // atoms only
    std::vector<FieldSlot> fields;    // declaration order
    Node* parent = nullptr;

    FieldSlot* slot(const std::string& name);
    const FieldSlot* slot(const std::string& name) const;

    // Single-field child, or nullptr.
    Node* child(const std::string& field);
    const Node* child(const std::string& field) const;

private:
    std::string construct_;
};

struct Tree {
    NodePtr root;
    std::uint64_t registry_fingerprint = 0;
};

// Fresh node with empty slots laid out per the construct declaration.
NodePtr make_node(const Registry& registry, const std::string& construct);
NodePtr make_atom(const Registry& registry, const std::string& construct, Value value);

// Deep copy; ids and spans are preserved (renumber afterwards for a
// fresh-identity copy).
NodePtr clone_node(const Node& node);
Tree clone_tree(const Tree& tree);

void walk_preorder(Node& node, const std::function<void(Node&)>& visit);
void walk_preorder(const Node& node, const std::function<void(const Node&)>& visit);

Node* find_by_id(Node& root, std::int64_t id);
const Node* find_by_id(const Node& root, std::int64_t id);

std::int64_t max_id(const Node& root);

// Number ids 1..n in document (preorder) order.
void renumber_preorder(Node& root);

// Recompute every parent pointer below (and including) root.
void set_parents(Node& root, Node* parent = nullptr);

void strip_spans(Node& root);
void strip_ids(Node& root);

// Equality up to ids and spans.
bool structural_equal(const Node& a, const Node& b);
// Equality including ids and spans.
bool exact_equal(const Node& a, const Node& b);

// True when `node` is `ancestor` or one of its descendants.
bool is_within(const Node* node, const Node* ancestor);

// Checks the tree against the registry: known constructs, declared
// fields in order, child conformance, atom values present and of the
// right kind (INT_LIT integral; TRUE_LIT, FALSE_LIT, NULL_LIT
// canonical), no value elsewhere, positive unique ids, ordered spans.
// Returns sorted diagnostics; empty means valid.
std::vector<std::string> validate_tree(const Registry& registry, const Node& root);

} // namespace bugfix

#endif
