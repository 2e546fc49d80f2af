#include "match.hpp"

#include <algorithm>
#include <set>

namespace bugfix {

const Node* Match::bound(const std::string& name) const {
    if (name == subject_name) return subject;
    for (const auto& [binder, node] : bindings)
        if (binder == name) return node;
    return nullptr;
}

namespace {

// A term evaluates to a node, an integer, a text, a node list, or
// nothing at all; an unevaluable operand makes its condition false.
struct TermValue {
    enum class Kind { Node, Int, Text, List, Unevaluable };
    Kind kind = Kind::Unevaluable;
    const Node* node = nullptr;
    std::int64_t integer = 0;
    std::string text;
    std::vector<const Node*> list;

    static TermValue none() { return {}; }
    static TermValue of(const Node* n) {
        TermValue v;
        v.kind = Kind::Node;
        v.node = n;
        return v;
    }
    static TermValue of(std::int64_t i) {
        TermValue v;
        v.kind = Kind::Int;
        v.integer = i;
        return v;
    }
    static TermValue of(std::string s) {
        TermValue v;
        v.kind = Kind::Text;
        v.text = std::move(s);
        return v;
    }
    static TermValue of(std::vector<const Node*> nodes) {
        TermValue v;
        v.kind = Kind::List;
        v.list = std::move(nodes);
        return v;
    }
};

using Env = std::vector<std::pair<std::string, const Node*>>;

const Node* env_lookup(const Env& env, const std::string& name) {
    for (const auto& [binder, node] : env)
        if (binder == name) return node;
    return nullptr;
}

void collect_root_vars(const Term& term, std::set<std::string>& out) {
    const Term* cur = &term;
    while (cur) {
        if (cur->kind == Term::Kind::Var) {
            out.insert(cur->name);
            return;
        }
        if (cur->kind == Term::Kind::IntLit || cur->kind == Term::Kind::TextLit) return;
        cur = cur->base.get();
    }
}

void collect_condition_vars(const Condition& condition, std::set<std::string>& out) {
    if (const auto* cmp = std::get_if<Comparison>(&condition.node)) {
        collect_root_vars(cmp->lhs, out);
        collect_root_vars(cmp->rhs, out);
    } else if (const auto* mem = std::get_if<Membership>(&condition.node)) {
        collect_root_vars(mem->element, out);
        collect_root_vars(mem->list, out);
    } else if (const auto* conf = std::get_if<ConformanceTest>(&condition.node)) {
        collect_root_vars(conf->subject, out);
    } else if (const auto* neg = std::get_if<Negation>(&condition.node)) {
        for (const Condition& inner : neg->body) collect_condition_vars(inner, out);
    }
}

class Evaluator {
public:
    Evaluator(const Registry& registry, const Env& env) : reg_(registry), env_(env) {}

    TermValue eval(const Term& term) const {
        switch (term.kind) {
            case Term::Kind::Var: {
                const Node* node = env_lookup(env_, term.name);
                return node ? TermValue::of(node) : TermValue::none();
            }
            case Term::Kind::IntLit:
                return TermValue::of(term.int_value);
            case Term::Kind::TextLit:
                return TermValue::of(term.text_value);
            case Term::Kind::Field: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::Node) return TermValue::none();
                const FieldSlot* slot = base.node->slot(term.name);
                if (!slot) return TermValue::none();
                if (slot->is_list) {
                    std::vector<const Node*> nodes;
                    nodes.reserve(slot->list.size());
                    for (const NodePtr& child : slot->list) nodes.push_back(child.get());
                    return TermValue::of(std::move(nodes));
                }
                return slot->single ? TermValue::of(slot->single.get()) : TermValue::none();
            }
            case Term::Kind::Index: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::Node || !base.node->parent)
                    return TermValue::none();
                for (const FieldSlot& slot : base.node->parent->fields) {
                    if (!slot.is_list) continue;
                    for (std::size_t i = 0; i < slot.list.size(); ++i) {
                        if (slot.list[i].get() == base.node)
                            return TermValue::of(static_cast<std::int64_t>(i + 1));
                    }
                }
                return TermValue::none();  // held in a single field
            }
            case Term::Kind::Count: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::List) return TermValue::none();
                return TermValue::of(static_cast<std::int64_t>(base.list.size()));
            }
            case Term::Kind::Value: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::Node || !base.node->value)
                    return TermValue::none();
                if (const auto* n = std::get_if<std::int64_t>(&*base.node->value))
                    return TermValue::of(*n);
                return TermValue::of(std::get<std::string>(*base.node->value));
            }
            case Term::Kind::Parent: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::Node || !base.node->parent)
                    return TermValue::none();
                return TermValue::of(base.node->parent);
            }
            case Term::Kind::Descendants: {
                TermValue base = eval(*term.base);
                if (base.kind != TermValue::Kind::Node) return TermValue::none();
                std::vector<const Node*> nodes;
                walk_preorder(*base.node, [&](const Node& n) {
                    if (&n != base.node) nodes.push_back(&n);
                });
                return TermValue::of(std::move(nodes));
            }
        }
        return TermValue::none();
    }

    bool holds(const Condition& condition) const {
        if (const auto* cmp = std::get_if<Comparison>(&condition.node)) {
            return compare(cmp->lhs, cmp->op, cmp->rhs);
        }
        if (const auto* mem = std::get_if<Membership>(&condition.node)) {
            TermValue element = eval(mem->element);
            TermValue list = eval(mem->list);
            if (element.kind != TermValue::Kind::Node || list.kind != TermValue::Kind::List)
                return false;
            return std::find(list.list.begin(), list.list.end(), element.node) != list.list.end();
        }
        if (const auto* conf = std::get_if<ConformanceTest>(&condition.node)) {
            TermValue subject = eval(conf->subject);
            if (subject.kind != TermValue::Kind::Node) return false;
            bool yes = reg_.conforms(subject.node->construct(), conf->construct);
            return conf->negated ? !yes : yes;
        }
        const auto& neg = std::get<Negation>(condition.node);
        for (const Condition& inner : neg.body) {
            if (!holds(inner)) return true;
        }
        return false;
    }

private:
    bool compare(const Term& lhs_term, CompareOp op, const Term& rhs_term) const {
        TermValue lhs = eval(lhs_term);
        TermValue rhs = eval(rhs_term);
        if (lhs.kind == TermValue::Kind::Unevaluable || rhs.kind == TermValue::Kind::Unevaluable)
            return false;
        if (lhs.kind == TermValue::Kind::List || rhs.kind == TermValue::Kind::List) return false;
        bool lhs_node = lhs.kind == TermValue::Kind::Node;
        bool rhs_node = rhs.kind == TermValue::Kind::Node;
        if (op == CompareOp::Eq || op == CompareOp::Ne) {
            // Node identity when both sides are nodes, value equality
            // when both are values; a node never equals a value.
            if (lhs_node != rhs_node) return false;
            bool equal;
            if (lhs_node) {
                equal = lhs.node == rhs.node;
            } else if (lhs.kind != rhs.kind) {
                equal = false;
            } else if (lhs.kind == TermValue::Kind::Int) {
                equal = lhs.integer == rhs.integer;
            } else {
                equal = lhs.text == rhs.text;
            }
            return op == CompareOp::Eq ? equal : !equal;
        }
        if (lhs.kind != TermValue::Kind::Int || rhs.kind != TermValue::Kind::Int) return false;
        switch (op) {
            case CompareOp::Lt: return lhs.integer < rhs.integer;
            case CompareOp::Le: return lhs.integer <= rhs.integer;
            case CompareOp::Gt: return lhs.integer > rhs.integer;
            case CompareOp::Ge: return lhs.integer >= rhs.integer;
            default: return false;
        }
    }

    const Registry& reg_;
    const Env& env_;
};

class Matcher {
public:
    Matcher(const Registry& registry, const Pattern& pattern)
        : reg_(registry), pattern_(pattern) {
        // Schedule each condition at the earliest point where all of
        // its variables are bound: stage 0 is right after fixing the
        // subject, stage i + 1 right after binding metavariable i.
        stages_.resize(pattern.metavars.size() + 1);
        for (const Condition& condition : pattern.where) {
            std::set<std::string> vars;
            collect_condition_vars(condition, vars);
            std::size_t stage = 0;
            for (std::size_t i = 0; i < pattern.metavars.size(); ++i) {
                if (vars.count(pattern.metavars[i].name)) stage = i + 1;
            }
            stages_[stage].push_back(&condition);
        }
    }

    std::vector<Match> run(const Tree& tree) {
        std::vector<const Node*> subjects;
        walk_preorder(*tree.root, [&](const Node& node) {
            if (reg_.conforms(node.construct(), pattern_.subject.type)) subjects.push_back(&node);
        });
        for (const Node* subject : subjects) match_subject(subject);
        std::stable_sort(results_.begin(), results_.end(), [](const Match& a, const Match& b) {
            if (a.subject->id != b.subject->id) return a.subject->id < b.subject->id;
            for (std::size_t i = 0; i < a.bindings.size(); ++i) {
                std::int64_t ai = a.bindings[i].second->id;
                std::int64_t bi = b.bindings[i].second->id;
                if (ai != bi) return ai < bi;
            }
            return false;
        });
        return std::move(results_);
    }

private:
    void match_subject(const Node* subject) {
        env_.clear();
        env_.emplace_back(pattern_.subject.name, subject);
        if (!stage_holds(0)) return;
        domain_.clear();
        walk_preorder(*subject, [&](const Node& node) {
            if (&node != subject) domain_.push_back(&node);
        });
        assign(subject, 0);
    }

    bool stage_holds(std::size_t stage) const {
        Evaluator eval(reg_, env_);
        for (const Condition* condition : stages_[stage]) {
            if (!eval.holds(*condition)) return false;
        }
        return true;
    }

    void assign(const Node* subject, std::size_t index) {
        if (index == pattern_.metavars.size()) {
            Match match;
            match.subject = subject;
            match.subject_name = pattern_.subject.name;
            match.bindings.assign(env_.begin() + 1, env_.end());
            results_.push_back(std::move(match));
            return;
        }
        const Binder& metavar = pattern_.metavars[index];
        for (const Node* candidate : domain_) {
            if (!reg_.conforms(candidate->construct(), metavar.type)) continue;
            env_.emplace_back(metavar.name, candidate);
            if (stage_holds(index + 1)) assign(subject, index + 1);
            env_.pop_back();
        }
    }

    const Registry& reg_;
    const Pattern& pattern_;
    std::vector<std::vector<const Condition*>> stages_;
    Env env_;
    std::vector<const Node*> domain_;
    std::vector<Match> results_;
};

} // namespace

std::vector<Match> match_pattern(const Registry& registry, const Tree& tree,
                                 const Pattern& pattern) {
    return Matcher(registry, pattern).run(tree);
}

} // namespace bugfix
