#include "registry.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "errors.hpp"
#include "spec_printer.hpp"

namespace bugfix {

namespace {

const std::vector<std::string>& builtin_atom_names() {
    static const std::vector<std::string> names = {
        "IDENTIFIER", "INT_LIT", "TRUE_LIT", "FALSE_LIT", "NULL_LIT",
    };
    return names;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

} // namespace

bool Registry::has_construct(const std::string& name) const {
    return construct_index_.count(name) != 0;
}

const ConstructDef* Registry::find_construct(const std::string& name) const {
    auto it = construct_index_.find(name);
    return it == construct_index_.end() ? nullptr : &constructs_[it->second];
}

const ConstructDef& Registry::construct(const std::string& name) const {
    const ConstructDef* def = find_construct(name);
    if (!def) throw Error(ErrorKind::NotFound, "unknown construct '" + name + "'");
    return *def;
}

const FieldDef* Registry::field_def(const std::string& construct_name, const std::string& field) const {
    const ConstructDef* def = find_construct(construct_name);
    return def ? def->field(field) : nullptr;
}

const SyntaxRule* Registry::find_syntax(const std::string& construct_name,
                                        const std::string& language) const {
    auto it = syntax_index_.find({construct_name, language});
    return it == syntax_index_.end() ? nullptr : &syntaxes_[it->second];
}

const Pattern* Registry::find_pattern(const std::string& name) const {
    auto it = pattern_index_.find(name);
    return it == pattern_index_.end() ? nullptr : &patterns_[it->second];
}

bool Registry::conforms(const std::string& sub, const std::string& super) const {
    if (sub == super) return true;
    auto it = ancestors_.find(sub);
    return it != ancestors_.end() && it->second.count(super) != 0;
}

std::vector<std::string> Registry::languages() const {
    std::set<std::string> seen;
    for (const SyntaxRule& rule : syntaxes_) seen.insert(rule.language);
    return {seen.begin(), seen.end()};
}

Registry build_registry(const std::vector<SpecUnit>& units) {
    Registry reg;
    for (const SpecUnit& unit : units) {
        std::string where = unit.name.empty() ? "" : " (unit '" + unit.name + "')";
        for (const ConstructDef& construct : unit.constructs) {
            if (!reg.construct_index_.emplace(construct.name, reg.constructs_.size()).second) {
                throw Error(ErrorKind::Validation,
                            "construct '" + construct.name + "' is already defined" + where);
            }
            reg.constructs_.push_back(construct);
        }
        for (const SyntaxRule& rule : unit.syntaxes) {
            auto key = std::make_pair(rule.construct, rule.language);
            if (!reg.syntax_index_.emplace(key, reg.syntaxes_.size()).second) {
                throw Error(ErrorKind::Validation, "syntax for '" + rule.construct + "' in '" +
                                                       rule.language + "' is already defined" + where);
            }
            reg.syntaxes_.push_back(rule);
        }
        for (const Pattern& pattern : unit.patterns) {
            if (!reg.pattern_index_.emplace(pattern.name, reg.patterns_.size()).second) {
                throw Error(ErrorKind::Validation,
                            "pattern '" + pattern.name + "' is already defined" + where);
            }
            reg.patterns_.push_back(pattern);
        }
    }
    for (const std::string& name : builtin_atom_names()) {
        if (reg.construct_index_.count(name)) continue;
        ConstructDef atom;
        atom.name = name;
        atom.is_atom = true;
        reg.construct_index_.emplace(name, reg.constructs_.size());
        reg.constructs_.push_back(atom);
    }

    // Reflexive-transitive conformance, tolerating cycles so that a
    // malformed registry can still be validated and reported on.
    for (const ConstructDef& construct : reg.constructs_) {
        std::unordered_set<std::string>& up = reg.ancestors_[construct.name];
        std::deque<std::string> queue(construct.parents.begin(), construct.parents.end());
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            if (!up.insert(cur).second) continue;
            const ConstructDef* def = reg.find_construct(cur);
            if (!def) continue;
            for (const std::string& parent : def->parents) queue.push_back(parent);
        }
    }

    SpecUnit signature;
    signature.constructs = reg.constructs_;
    reg.fingerprint_ = fnv1a(render_spec(signature));
    return reg;
}

namespace {

class Validator {
public:
    explicit Validator(const Registry& registry) : reg_(registry) {}

    std::vector<std::string> run() {
        for (const ConstructDef& construct : reg_.constructs()) check_construct(construct);
        for (const SyntaxRule& rule : reg_.syntaxes()) check_syntax(rule);
        for (const Pattern& pattern : reg_.patterns()) check_pattern(pattern);
        std::sort(out_.begin(), out_.end());
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    void report(const std::string& where, const std::string& what) {
        out_.push_back(where + ": " + what);
    }

    void check_construct(const ConstructDef& construct) {
        std::string where = "construct '" + construct.name + "'";
        for (const std::string& parent : construct.parents) {
            if (!reg_.has_construct(parent)) report(where, "unknown parent '" + parent + "'");
        }
        // A cycle shows up as the construct appearing among its own
        // proper ancestors.
        auto it_up = ancestors_of(construct.name);
        if (it_up && it_up->count(construct.name)) report(where, "inheritance cycle");
        for (const FieldDef& field : construct.fields) {
            if (!reg_.has_construct(field.type)) {
                report(where, "field '" + field.name + "' has unknown type '" + field.type + "'");
            }
        }
    }

    const std::unordered_set<std::string>* ancestors_of(const std::string& name) {
        // Recompute proper ancestors from the inherit edges; the
        // registry's closure is keyed the same way.
        auto it = cached_up_.find(name);
        if (it != cached_up_.end()) return &it->second;
        std::unordered_set<std::string> up;
        const ConstructDef* def = reg_.find_construct(name);
        if (!def) return nullptr;
        std::deque<std::string> queue(def->parents.begin(), def->parents.end());
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            if (!up.insert(cur).second) continue;
            const ConstructDef* cur_def = reg_.find_construct(cur);
            if (!cur_def) continue;
            for (const std::string& parent : cur_def->parents) queue.push_back(parent);
        }
        return &cached_up_.emplace(name, std::move(up)).first->second;
    }

    void check_syntax(const SyntaxRule& rule) {
        std::string where = "syntax '" + rule.construct + "' for " + rule.language;
        const ConstructDef* def = reg_.find_construct(rule.construct);
        if (!def) {
            report(where, "unknown construct '" + rule.construct + "'");
            return;
        }
        check_template(where, *def, rule.body);
    }

    void check_template(const std::string& where, const ConstructDef& def, const Template& tpl) {
        for (const TemplateElement& element : tpl) {
            if (std::get_if<TplValue>(&element.node)) {
                if (!def.is_atom) report(where, "'value' in the template of a non-atom construct");
            } else if (const auto* field = std::get_if<TplField>(&element.node)) {
                const FieldDef* fd = def.field(field->field);
                if (!fd) {
                    report(where, "unknown field '" + field->field + "'");
                } else if (field->separator && !fd->is_list) {
                    report(where, "separator on single field '" + field->field + "'");
                }
            } else if (const auto* cond = std::get_if<TplConditional>(&element.node)) {
                check_guard(where, def, cond->guard);
                check_template(where, def, cond->when_true);
                check_template(where, def, cond->when_false);
            }
        }
    }

    void check_guard(const std::string& where, const ConstructDef& def, const TplGuard& guard) {
        if (guard.field.empty()) {
            if (!def.is_atom) report(where, "'value' guard on a non-atom construct");
            return;
        }
        const FieldDef* fd = def.field(guard.field);
        if (!fd) {
            report(where, "unknown field '" + guard.field + "'");
            return;
        }
        if (guard.kind == TplGuard::Kind::Count && !fd->is_list) {
            report(where, "count guard on single field '" + guard.field + "'");
        }
    }

    // ----- patterns ------------------------------------------------

    void check_pattern(const Pattern& pattern) {
        where_ = "pattern '" + pattern.name + "'";
        binders_.clear();
        binders_[pattern.subject.name] = pattern.subject.type;
        if (!reg_.has_construct(pattern.subject.type)) {
            report(where_, "unknown type '" + pattern.subject.type + "' for '" +
                               pattern.subject.name + "'");
        }
        for (const Binder& metavar : pattern.metavars) {
            binders_[metavar.name] = metavar.type;
            if (!reg_.has_construct(metavar.type)) {
                report(where_,
                       "unknown type '" + metavar.type + "' for '" + metavar.name + "'");
            }
        }
        for (const Condition& condition : pattern.where) check_condition(condition);
        if (const auto* update = std::get_if<Update>(&pattern.fix)) {
            for (const Subst& subst : update->substs) check_node_expr(subst.expr);
        } else {
            check_instantiation(std::get<Instantiation>(pattern.fix));
        }
    }

    void check_condition(const Condition& condition) {
        if (const auto* cmp = std::get_if<Comparison>(&condition.node)) {
            check_term(cmp->lhs);
            check_term(cmp->rhs);
        } else if (const auto* mem = std::get_if<Membership>(&condition.node)) {
            check_term(mem->element);
            check_term(mem->list);
            if (mem->list.kind == Term::Kind::Field) {
                // The target of `in` must be able to hold several
                // nodes; a single field never can.
                auto [exists, fd] = lookup_field(mem->list);
                if (exists && fd && !fd->is_list) {
                    report(where_, "membership in single field '" + mem->list.name + "'");
                }
            } else if (mem->list.kind != Term::Kind::Descendants) {
                report(where_, "membership target is not a list");
            }
        } else if (const auto* conf = std::get_if<ConformanceTest>(&condition.node)) {
            check_term(conf->subject);
            if (!reg_.has_construct(conf->construct)) {
                report(where_, "unknown construct '" + conf->construct + "' in conformance test");
            }
        } else if (const auto* neg = std::get_if<Negation>(&condition.node)) {
            for (const Condition& inner : neg->body) check_condition(inner);
        }
    }

    // Returns {field statically resolvable, its unique definition or
    // nullptr when conforming constructs disagree}.
    std::pair<bool, const FieldDef*> lookup_field(const Term& term) {
        std::optional<std::string> base_type = static_type(*term.base);
        if (!base_type) return {true, nullptr};
        const FieldDef* found = nullptr;
        bool multiple = false;
        for (const ConstructDef& construct : reg_.constructs()) {
            if (!reg_.conforms(construct.name, *base_type)) continue;
            const FieldDef* fd = construct.field(term.name);
            if (!fd) continue;
            if (found && !(found->type == fd->type && found->is_list == fd->is_list)) multiple = true;
            found = fd;
        }
        if (!found) {
            report(where_, "no construct conforming to '" + *base_type + "' has field '" +
                               term.name + "'");
            return {false, nullptr};
        }
        return {true, multiple ? nullptr : found};
    }

    // Best-effort static type of a node-valued term; nullopt when the
    // type cannot be pinned down (which is fine, evaluation decides).
    std::optional<std::string> static_type(const Term& term) {
        switch (term.kind) {
            case Term::Kind::Var: {
                auto it = binders_.find(term.name);
                return it == binders_.end() ? std::nullopt
                                            : std::optional<std::string>(it->second);
            }
            case Term::Kind::Field: {
                auto [exists, fd] = lookup_field(term);
                if (exists && fd) return fd->type;
                return std::nullopt;
            }
            default:
                return std::nullopt;
        }
    }

    void check_term(const Term& term) {
        switch (term.kind) {
            case Term::Kind::Var:
            case Term::Kind::IntLit:
            case Term::Kind::TextLit:
                return;
            case Term::Kind::Field:
                check_term(*term.base);
                lookup_field(term);
                return;
            default:
                check_term(*term.base);
                return;
        }
    }

    void check_node_expr(const NodeExpr& expr) {
        if (const auto* path = std::get_if<FieldPath>(&expr.node)) {
            // Re-use the term checker by rebuilding the access chain.
            Term term = Term::var(path->var);
            for (const std::string& field : path->path) {
                term = Term::access(Term::Kind::Field, std::move(term), field);
            }
            check_term(term);
        } else if (const auto* inst = std::get_if<Instantiation>(&expr.node)) {
            check_instantiation(*inst);
        }
    }

    void check_instantiation(const Instantiation& inst) {
        const ConstructDef* def = reg_.find_construct(inst.construct);
        if (!def) {
            report(where_, "fix instantiates unknown construct '" + inst.construct + "'");
            return;
        }
        if (def->is_atom) {
            if (!inst.fields.empty()) {
                report(where_, "atom construct '" + inst.construct + "' takes a value, not fields");
            }
            if (!inst.atom_value) {
                report(where_, "atom instantiation of '" + inst.construct + "' needs a value");
            } else if (inst.construct == "INT_LIT" &&
                       !std::holds_alternative<std::int64_t>(*inst.atom_value)) {
                report(where_, "INT_LIT takes an integer value");
            }
            return;
        }
        if (inst.atom_value) {
            report(where_, "construct '" + inst.construct + "' is not an atom; it takes fields");
        }
        for (const FieldInit& init : inst.fields) {
            const FieldDef* fd = def->field(init.field);
            if (!fd) {
                report(where_, "construct '" + inst.construct + "' has no field '" + init.field + "'");
            } else if (fd->is_list != init.is_list) {
                report(where_, std::string("field '") + init.field + "' of '" + inst.construct +
                                   (fd->is_list ? "' is a list" : "' is not a list"));
            }
            for (const NodeExpr& value : init.values) check_node_expr(value);
        }
        for (const FieldDef& fd : def->fields) {
            if (fd.is_list) continue;
            bool assigned = false;
            for (const FieldInit& init : inst.fields) {
                if (init.field == fd.name) assigned = true;
            }
            if (!assigned) {
                report(where_, "instantiation of '" + inst.construct + "' misses field '" +
                                   fd.name + "'");
            }
        }
    }

    const Registry& reg_;
    std::vector<std::string> out_;
    std::string where_;
    std::unordered_map<std::string, std::string> binders_;
    std::unordered_map<std::string, std::unordered_set<std::string>> cached_up_;
};

} // namespace

std::vector<std::string> validate_registry(const Registry& registry) {
    return Validator(registry).run();
}

} // namespace bugfix
