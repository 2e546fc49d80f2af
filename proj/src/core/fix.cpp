#include "fix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "errors.hpp"

namespace bugfix {

namespace {

[[noreturn]] void apply_error(const std::string& message) {
    throw Error(ErrorKind::Apply, message);
}

using Env = std::vector<std::pair<std::string, Node*>>;

Node* env_lookup(const Env& env, const std::string& name) {
    for (const auto& [binder, node] : env)
        if (binder == name) return node;
    return nullptr;
}

// Where a node sits in its tree, precise enough to detach and refill.
struct Position {
    bool is_root = false;
    Node* parent = nullptr;
    FieldSlot* slot = nullptr;
    std::size_t index = 0;
};

Position find_position(Tree& tree, Node* node) {
    Position pos;
    if (node == tree.root.get()) {
        pos.is_root = true;
        return pos;
    }
    Node* parent = node->parent;
    if (!parent) apply_error("node is detached from the tree");
    for (FieldSlot& slot : parent->fields) {
        if (slot.is_list) {
            for (std::size_t i = 0; i < slot.list.size(); ++i) {
                if (slot.list[i].get() == node) {
                    pos.parent = parent;
                    pos.slot = &slot;
                    pos.index = i;
                    return pos;
                }
            }
        } else if (slot.single.get() == node) {
            pos.parent = parent;
            pos.slot = &slot;
            return pos;
        }
    }
    apply_error("node is not among its parent's children");
}

NodePtr detach(Tree& tree, const Position& pos) {
    if (pos.is_root) return std::move(tree.root);
    if (pos.slot->is_list) return std::move(pos.slot->list[pos.index]);
    return std::move(pos.slot->single);
}

void place(Tree& tree, const Position& pos, NodePtr node) {
    if (pos.is_root) {
        tree.root = std::move(node);
        return;
    }
    if (pos.slot->is_list) {
        pos.slot->list[pos.index] = std::move(node);
    } else {
        pos.slot->single = std::move(node);
    }
}

// Pulls the subtree rooted at `source` out of the holding area (the
// detached replaced regions), skipping already-vacated slots.
NodePtr extract(std::vector<NodePtr>& holding, const Node* source) {
    std::function<NodePtr(NodePtr&)> from = [&](NodePtr& owner) -> NodePtr {
        if (!owner) return nullptr;
        if (owner.get() == source) return std::move(owner);
        for (FieldSlot& slot : owner->fields) {
            if (slot.is_list) {
                for (NodePtr& child : slot.list) {
                    if (NodePtr got = from(child)) return got;
                }
            } else if (NodePtr got = from(slot.single)) {
                return got;
            }
        }
        return nullptr;
    };
    for (NodePtr& root : holding) {
        if (NodePtr got = from(root)) return got;
    }
    apply_error("moved node is outside the replaced region");
}

// Resolves a field path to the node it denotes in the pre-state.
Node* resolve_path(const Env& env, const FieldPath& path) {
    Node* node = env_lookup(env, path.var);
    if (!node) apply_error("unbound name '" + path.var + "'");
    for (const std::string& field : path.path) {
        const FieldSlot* slot = node->slot(field);
        if (!slot) {
            apply_error("construct '" + node->construct() + "' has no field '" + field + "'");
        }
        if (slot->is_list || !slot->single) {
            apply_error("'" + path.var + "." + field + "' does not denote a single node");
        }
        node = slot->single.get();
    }
    return node;
}

// Every pre-state node denoted by some right-hand side, with how often
// a metavariable reference names it.
struct Sources {
    std::vector<const Node*> all;
    std::map<const Node*, int> var_refs;
};

void collect_sources(const Env& env, const NodeExpr& expr, Sources& out) {
    if (const auto* var = std::get_if<VarRef>(&expr.node)) {
        Node* node = env_lookup(env, var->name);
        if (!node) apply_error("unbound name '" + var->name + "'");
        out.all.push_back(node);
        out.var_refs[node] += 1;
    } else if (const auto* path = std::get_if<FieldPath>(&expr.node)) {
        out.all.push_back(resolve_path(env, *path));
    } else {
        const auto& inst = std::get<Instantiation>(expr.node);
        for (const FieldInit& init : inst.fields) {
            for (const NodeExpr& value : init.values) collect_sources(env, value, out);
        }
    }
}

// A materialised right-hand side: built nodes plus deferred moves to
// patch in once the replaced regions are detached.
struct MovePatch {
    Node* parent = nullptr;  // nullptr: the move is the whole result
    std::string slot_name;
    bool in_list = false;
    std::size_t index = 0;
    const Node* source = nullptr;
};

struct BuiltExpr {
    NodePtr root;
    std::vector<MovePatch> patches;
};

class Materializer {
public:
    Materializer(const Registry& registry, const Env& env, const std::set<const Node*>& movable)
        : reg_(registry), env_(env), movable_(movable) {}

    BuiltExpr build(const NodeExpr& expr) {
        BuiltExpr out;
        out.root = build_expr(expr, nullptr, "", false, 0, out);
        return out;
    }

private:
    NodePtr copy_of(const Node& node) {
        NodePtr copy = clone_node(node);
        strip_ids(*copy);
        return copy;
    }

    NodePtr build_expr(const NodeExpr& expr, Node* parent, const std::string& slot_name,
                       bool in_list, std::size_t index, BuiltExpr& out) {
        if (const auto* var = std::get_if<VarRef>(&expr.node)) {
            Node* node = env_lookup(env_, var->name);
            if (movable_.count(node)) {
                out.patches.push_back({parent, slot_name, in_list, index, node});
                return nullptr;
            }
            return copy_of(*node);
        }
        if (const auto* path = std::get_if<FieldPath>(&expr.node)) {
            return copy_of(*resolve_path(env_, *path));
        }
        const auto& inst = std::get<Instantiation>(expr.node);
        const ConstructDef& def = reg_.construct(inst.construct);
        if (def.is_atom) {
            if (!inst.atom_value) {
                apply_error("atom instantiation of '" + inst.construct + "' needs a value");
            }
            if (!inst.fields.empty()) {
                apply_error("atom construct '" + inst.construct + "' takes no fields");
            }
            return make_atom(reg_, inst.construct, *inst.atom_value);
        }
        if (inst.atom_value) {
            apply_error("construct '" + inst.construct + "' is not an atom");
        }
        NodePtr node = make_node(reg_, inst.construct);
        for (const FieldInit& init : inst.fields) {
            FieldSlot* slot = node->slot(init.field);
            if (!slot) {
                apply_error("construct '" + inst.construct + "' has no field '" + init.field + "'");
            }
            if (slot->is_list != init.is_list) {
                apply_error(std::string("field '") + init.field + "' of '" + inst.construct +
                            (slot->is_list ? "' takes a list" : "' takes a single node"));
            }
            if (slot->is_list) {
                for (std::size_t i = 0; i < init.values.size(); ++i) {
                    slot->list.push_back(
                        build_expr(init.values[i], node.get(), slot->name, true, i, out));
                }
            } else {
                slot->single = build_expr(init.values[0], node.get(), slot->name, false, 0, out);
            }
        }
        for (const FieldSlot& slot : node->fields) {
            bool initialised = slot.is_list || slot.single;
            for (const MovePatch& patch : out.patches) {
                if (patch.parent == node.get() && patch.slot_name == slot.name && !patch.in_list) {
                    initialised = true;
                }
            }
            if (!initialised) {
                apply_error("instantiation of '" + inst.construct + "' misses field '" +
                            slot.name + "'");
            }
        }
        return node;
    }

    const Registry& reg_;
    const Env& env_;
    const std::set<const Node*>& movable_;
};

void check_placement(const Registry& reg, const Position& pos, const Node& replacement) {
    if (pos.is_root) return;
    const FieldDef* fd = reg.field_def(pos.parent->construct(), pos.slot->name);
    if (fd && !reg.conforms(replacement.construct(), fd->type)) {
        apply_error("replacement '" + replacement.construct() + "' does not conform to '" +
                    fd->type + "' in field '" + fd->name + "'");
    }
}

// Renumbers: later duplicates of an id lose it, then every id-less
// node is numbered in document order after the largest id in use.
void sweep_ids(Node& root) {
    std::set<std::int64_t> used;
    walk_preorder(root, [&](Node& node) {
        if (node.id > 0 && !used.insert(node.id).second) node.id = 0;
    });
    std::int64_t next = (used.empty() ? 0 : *used.rbegin()) + 1;
    walk_preorder(root, [&](Node& node) {
        if (node.id == 0) node.id = next++;
    });
}

// Decides which sources may move: named by exactly one metavariable
// reference, denoted by no other right-hand side, and lying inside a
// replaced region.
std::set<const Node*> movable_sources(const Sources& sources,
                                      const std::vector<Node*>& regions) {
    std::set<const Node*> movable;
    for (const auto& [node, count] : sources.var_refs) {
        if (count != 1) continue;
        int occurrences = 0;
        bool overlaps = false;
        for (const Node* other : sources.all) {
            if (other == node) {
                ++occurrences;
                continue;
            }
            if (is_within(node, other) || is_within(other, node)) overlaps = true;
        }
        if (occurrences != 1 || overlaps) continue;
        bool in_region = false;
        for (Node* region : regions) {
            if (is_within(node, region)) in_region = true;
        }
        if (in_region) movable.insert(node);
    }
    return movable;
}

void patch_moves(BuiltExpr& built, std::vector<NodePtr>& holding) {
    for (const MovePatch& patch : built.patches) {
        NodePtr moved = extract(holding, patch.source);
        if (!patch.parent) {
            built.root = std::move(moved);
            continue;
        }
        FieldSlot* slot = patch.parent->slot(patch.slot_name);
        if (patch.in_list) {
            slot->list[patch.index] = std::move(moved);
        } else {
            slot->single = std::move(moved);
        }
    }
}

} // namespace

Tree apply_fix(const Registry& registry, const Tree& tree, const Pattern& pattern,
               const Match& match) {
    Tree out = clone_tree(tree);

    // The match points into the caller's tree; chase ids into the clone.
    std::unordered_map<std::int64_t, Node*> by_id;
    walk_preorder(*out.root, [&](Node& node) { by_id[node.id] = &node; });
    auto in_clone = [&](const Node* original, const char* what) -> Node* {
        auto it = by_id.find(original->id);
        if (it == by_id.end() || it->second->construct() != original->construct()) {
            apply_error(std::string("match does not reference this tree (") + what + ")");
        }
        return it->second;
    };

    Env env;
    env.emplace_back(match.subject_name, in_clone(match.subject, "subject"));
    for (const auto& [name, node] : match.bindings) {
        env.emplace_back(name, in_clone(node, name.c_str()));
    }
    Node* subject = env.front().second;

    if (const auto* update = std::get_if<Update>(&pattern.fix)) {
        std::vector<Node*> targets;
        for (const Subst& subst : update->substs) {
            Node* target = env_lookup(env, subst.target);
            if (!target) apply_error("unbound target '" + subst.target + "'");
            if (!is_within(target, subject) || target == subject) {
                apply_error("target '" + subst.target + "' is not inside the subject");
            }
            targets.push_back(target);
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            for (std::size_t j = i + 1; j < targets.size(); ++j) {
                if (targets[i] == targets[j]) {
                    apply_error("targets '" + update->substs[i].target + "' and '" +
                                update->substs[j].target + "' bind the same node");
                }
                if (is_within(targets[i], targets[j]) || is_within(targets[j], targets[i])) {
                    apply_error("targets '" + update->substs[i].target + "' and '" +
                                update->substs[j].target + "' overlap");
                }
            }
        }

        Sources sources;
        for (const Subst& subst : update->substs) collect_sources(env, subst.expr, sources);
        std::set<const Node*> movable = movable_sources(sources, targets);

        Materializer materializer(registry, env, movable);
        std::vector<BuiltExpr> built;
        built.reserve(update->substs.size());
        for (const Subst& subst : update->substs) built.push_back(materializer.build(subst.expr));

        std::vector<Position> positions;
        positions.reserve(targets.size());
        for (Node* target : targets) positions.push_back(find_position(out, target));

        std::vector<NodePtr> holding;
        holding.reserve(targets.size());
        for (const Position& pos : positions) holding.push_back(detach(out, pos));

        for (std::size_t i = 0; i < built.size(); ++i) {
            patch_moves(built[i], holding);
            if (!built[i].root) apply_error("substitution produced no node");
            check_placement(registry, positions[i], *built[i].root);
            place(out, positions[i], std::move(built[i].root));
        }
    } else {
        const auto& inst = std::get<Instantiation>(pattern.fix);
        NodeExpr expr;
        expr.node = inst;

        Sources sources;
        collect_sources(env, expr, sources);
        std::set<const Node*> movable = movable_sources(sources, {subject});

        Materializer materializer(registry, env, movable);
        BuiltExpr built = materializer.build(expr);

        std::int64_t subject_id = subject->id;
        std::optional<Span> subject_span = subject->span;
        Position pos = find_position(out, subject);
        std::vector<NodePtr> holding;
        holding.push_back(detach(out, pos));
        patch_moves(built, holding);
        if (!built.root) apply_error("fix produced no node");
        built.root->id = subject_id;
        built.root->span = subject_span;
        check_placement(registry, pos, *built.root);
        place(out, pos, std::move(built.root));
    }

    set_parents(*out.root);
    sweep_ids(*out.root);
    return out;
}

} // namespace bugfix
