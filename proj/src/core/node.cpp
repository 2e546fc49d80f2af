#include "node.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace bugfix {

FieldSlot* Node::slot(const std::string& name) {
    for (FieldSlot& s : fields)
        if (s.name == name) return &s;
    return nullptr;
}

const FieldSlot* Node::slot(const std::string& name) const {
    for (const FieldSlot& s : fields)
        if (s.name == name) return &s;
    return nullptr;
}

Node* Node::child(const std::string& field) {
    FieldSlot* s = slot(field);
    return s && !s->is_list ? s->single.get() : nullptr;
}

const Node* Node::child(const std::string& field) const {
    const FieldSlot* s = slot(field);
    return s && !s->is_list ? s->single.get() : nullptr;
}

NodePtr make_node(const Registry& registry, const std::string& construct) {
    const ConstructDef& def = registry.construct(construct);
    auto node = std::make_unique<Node>(construct);
    node->fields.reserve(def.fields.size());
    for (const FieldDef& field : def.fields) {
        FieldSlot slot;
        slot.name = field.name;
        slot.is_list = field.is_list;
        node->fields.push_back(std::move(slot));
    }
    return node;
}

NodePtr make_atom(const Registry& registry, const std::string& construct, Value value) {
    const ConstructDef& def = registry.construct(construct);
    if (!def.is_atom)
        throw Error(ErrorKind::Validation, "construct '" + construct + "' is not an atom");
    auto node = std::make_unique<Node>(construct);
    node->value = std::move(value);
    return node;
}

NodePtr clone_node(const Node& node) {
    auto copy = std::make_unique<Node>(node.construct());
    copy->id = node.id;
    copy->span = node.span;
    copy->value = node.value;
    copy->fields.reserve(node.fields.size());
    for (const FieldSlot& slot : node.fields) {
        FieldSlot out;
        out.name = slot.name;
        out.is_list = slot.is_list;
        if (slot.is_list) {
            out.list.reserve(slot.list.size());
            for (const NodePtr& child : slot.list) {
                out.list.push_back(clone_node(*child));
                out.list.back()->parent = copy.get();
            }
        } else if (slot.single) {
            out.single = clone_node(*slot.single);
            out.single->parent = copy.get();
        }
        copy->fields.push_back(std::move(out));
    }
    return copy;
}

Tree clone_tree(const Tree& tree) {
    Tree out;
    out.root = clone_node(*tree.root);
    out.registry_fingerprint = tree.registry_fingerprint;
    set_parents(*out.root);
    return out;
}

void walk_preorder(Node& node, const std::function<void(Node&)>& visit) {
    visit(node);
    for (FieldSlot& slot : node.fields) {
        if (slot.is_list) {
            for (NodePtr& child : slot.list) walk_preorder(*child, visit);
        } else if (slot.single) {
            walk_preorder(*slot.single, visit);
        }
    }
}

void walk_preorder(const Node& node, const std::function<void(const Node&)>& visit) {
    // The visitor cannot mutate, so reuse the non-const traversal.
    walk_preorder(const_cast<Node&>(node), [&visit](Node& n) { visit(n); });
}

Node* find_by_id(Node& root, std::int64_t id) {
    Node* found = nullptr;
    walk_preorder(root, [&](Node& node) {
        if (!found && node.id == id) found = &node;
    });
    return found;
}

const Node* find_by_id(const Node& root, std::int64_t id) {
    const Node* found = nullptr;
    walk_preorder(root, [&](const Node& node) {
        if (!found && node.id == id) found = &node;
    });
    return found;
}

std::int64_t max_id(const Node& root) {
    std::int64_t best = 0;
    walk_preorder(root, [&](const Node& node) { best = std::max(best, node.id); });
    return best;
}

void renumber_preorder(Node& root) {
    std::int64_t next = 1;
    walk_preorder(root, [&](Node& node) { node.id = next++; });
}

void set_parents(Node& root, Node* parent) {
    root.parent = parent;
    for (FieldSlot& slot : root.fields) {
        if (slot.is_list) {
            for (NodePtr& child : slot.list) set_parents(*child, &root);
        } else if (slot.single) {
            set_parents(*slot.single, &root);
        }
    }
}

void strip_spans(Node& root) {
    walk_preorder(root, [](Node& node) { node.span.reset(); });
}

void strip_ids(Node& root) {
    walk_preorder(root, [](Node& node) { node.id = 0; });
}

namespace {

bool equal(const Node& a, const Node& b, bool exact) {
    if (a.construct() != b.construct()) return false;
    if (a.value != b.value) return false;
    if (exact && (a.id != b.id || a.span != b.span)) return false;
    if (a.fields.size() != b.fields.size()) return false;
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
        const FieldSlot& sa = a.fields[i];
        const FieldSlot& sb = b.fields[i];
        if (sa.name != sb.name || sa.is_list != sb.is_list) return false;
        if (sa.is_list) {
            if (sa.list.size() != sb.list.size()) return false;
            for (std::size_t j = 0; j < sa.list.size(); ++j)
                if (!equal(*sa.list[j], *sb.list[j], exact)) return false;
        } else {
            if (!sa.single != !sb.single) return false;
            if (sa.single && !equal(*sa.single, *sb.single, exact)) return false;
        }
    }
    return true;
}

} // namespace

bool structural_equal(const Node& a, const Node& b) { return equal(a, b, false); }
bool exact_equal(const Node& a, const Node& b) { return equal(a, b, true); }

bool is_within(const Node* node, const Node* ancestor) {
    for (const Node* cur = node; cur; cur = cur->parent)
        if (cur == ancestor) return true;
    return false;
}

namespace {

bool has_text_value(const std::optional<Value>& value, const char* expected) {
    if (!value) return false;
    const auto* text = std::get_if<std::string>(&*value);
    return text && *text == expected;
}

} // namespace

std::vector<std::string> validate_tree(const Registry& registry, const Node& root) {
    std::vector<std::string> out;
    std::set<std::int64_t> ids;
    walk_preorder(root, [&](const Node& node) {
        std::string where = "node " + std::to_string(node.id) + " (" + node.construct() + ")";
        const ConstructDef* def = registry.find_construct(node.construct());
        if (!def) {
            out.push_back(where + ": unknown construct");
            return;
        }
        if (node.id <= 0) {
            out.push_back(where + ": non-positive id");
        } else if (!ids.insert(node.id).second) {
            out.push_back(where + ": duplicate id");
        }
        if (node.span && node.span->begin > node.span->end) {
            out.push_back(where + ": malformed span");
        }
        if (def->is_atom) {
            if (!node.value) {
                out.push_back(where + ": atom without a value");
            } else if (node.construct() == "INT_LIT" &&
                       !std::holds_alternative<std::int64_t>(*node.value)) {
                out.push_back(where + ": INT_LIT value is not an integer");
            } else if (node.construct() == "TRUE_LIT" && !has_text_value(node.value, "true")) {
                out.push_back(where + ": TRUE_LIT value is not \"true\"");
            } else if (node.construct() == "FALSE_LIT" && !has_text_value(node.value, "false")) {
                out.push_back(where + ": FALSE_LIT value is not \"false\"");
            } else if (node.construct() == "NULL_LIT" && !has_text_value(node.value, "null")) {
                out.push_back(where + ": NULL_LIT value is not \"null\"");
            }
            if (!node.fields.empty()) out.push_back(where + ": atom with fields");
            return;
        }
        if (node.value) out.push_back(where + ": value on a non-atom");
        if (node.fields.size() != def->fields.size()) {
            out.push_back(where + ": field count differs from declaration");
            return;
        }
        for (std::size_t i = 0; i < def->fields.size(); ++i) {
            const FieldDef& fd = def->fields[i];
            const FieldSlot& slot = node.fields[i];
            if (slot.name != fd.name || slot.is_list != fd.is_list) {
                out.push_back(where + ": field '" + slot.name + "' does not match declared '" +
                              fd.name + "'");
                continue;
            }
            auto check_child = [&](const Node* child) {
                if (!child) {
                    out.push_back(where + ": missing child in field '" + fd.name + "'");
                    return;
                }
                if (!registry.conforms(child->construct(), fd.type)) {
                    out.push_back(where + ": child '" + child->construct() + "' in field '" +
                                  fd.name + "' does not conform to '" + fd.type + "'");
                }
            };
            if (slot.is_list) {
                for (const NodePtr& child : slot.list) check_child(child.get());
            } else {
                check_child(slot.single.get());
            }
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bugfix
