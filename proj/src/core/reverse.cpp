#include "reverse.hpp"

#include <functional>
#include <map>
#include <set>

#include "errors.hpp"

namespace bugfix {

namespace {

[[noreturn]] void not_invertible(const std::string& reason) { throw NotInvertibleError(reason); }

Pattern shell(const Pattern& pattern) {
    Pattern out;
    out.name = pattern.name + "_REV";
    out.category = pattern.category;
    out.seed_only = !pattern.seed_only;
    out.subject = pattern.subject;
    return out;
}

// ----- updates: inverse permutation --------------------------------

Pattern reverse_update(const Pattern& pattern, const Update& update) {
    std::set<std::string> targets;
    for (const Subst& subst : update.substs) targets.insert(subst.target);

    std::vector<std::pair<std::string, std::string>> inverse;  // (new target, rhs var)
    std::set<std::string> rhs_seen;
    for (const Subst& subst : update.substs) {
        const auto* var = std::get_if<VarRef>(&subst.expr.node);
        if (!var) not_invertible("a right-hand side is not a plain metavariable");
        if (!targets.count(var->name) || !rhs_seen.insert(var->name).second) {
            not_invertible("the substitution does not permute its targets");
        }
        inverse.emplace_back(var->name, subst.target);
    }

    Pattern out = shell(pattern);
    out.metavars = pattern.metavars;
    out.where = pattern.where;
    Update fix;
    fix.binder = update.binder;
    std::set<std::string> earlier;
    for (const auto& [target, rhs] : inverse) {
        Subst subst;
        subst.target = target;
        VarRef ref;
        ref.name = rhs;
        ref.old_flag = earlier.count(rhs) != 0;
        subst.expr.node = ref;
        fix.substs.push_back(std::move(subst));
        earlier.insert(target);
    }
    out.fix = std::move(fix);
    return out;
}

// ----- fixed-value atom flips ---------------------------------------

const char* canonical_atom_value(const std::string& construct) {
    if (construct == "TRUE_LIT") return "true";
    if (construct == "FALSE_LIT") return "false";
    if (construct == "NULL_LIT") return "null";
    return nullptr;
}

Pattern reverse_atom_flip(const Pattern& pattern, const Instantiation& inst) {
    if (!pattern.metavars.empty() || !pattern.where.empty()) {
        not_invertible("a condition on the subject cannot be transported");
    }
    const char* subject_value = canonical_atom_value(pattern.subject.type);
    const char* fix_value = canonical_atom_value(inst.construct);
    if (!subject_value || !fix_value) {
        not_invertible("an atom fix cannot reconstruct the subject's value");
    }
    Pattern out = shell(pattern);
    out.subject.type = inst.construct;
    Instantiation fix;
    fix.construct = pattern.subject.type;
    fix.atom_value = std::string(subject_value);
    out.fix = std::move(fix);
    return out;
}

// ----- instantiations: transposed field bindings --------------------

// A where-clause of the form `m = s.f` (either orientation) binding a
// metavariable to a single field of the subject.
const std::string* binding_field(const Condition& condition, const std::string& subject,
                                 const std::set<std::string>& metavars, std::string& metavar) {
    const auto* cmp = std::get_if<Comparison>(&condition.node);
    if (!cmp || cmp->op != CompareOp::Eq) return nullptr;
    auto side = [&](const Term& var_side, const Term& field_side) -> const std::string* {
        if (var_side.kind != Term::Kind::Var || !metavars.count(var_side.name)) return nullptr;
        if (field_side.kind != Term::Kind::Field || !field_side.base ||
            field_side.base->kind != Term::Kind::Var || field_side.base->name != subject) {
            return nullptr;
        }
        metavar = var_side.name;
        return &field_side.name;
    };
    if (const std::string* field = side(cmp->lhs, cmp->rhs)) return field;
    return side(cmp->rhs, cmp->lhs);
}

bool mentions_subject(const Condition& condition, const std::string& subject) {
    std::set<std::string> vars;
    // Reuse the matcher's notion of a condition's root variables
    // without exporting it: walk terms locally.
    std::function<void(const Term&)> from_term = [&](const Term& term) {
        const Term* cur = &term;
        while (cur) {
            if (cur->kind == Term::Kind::Var) {
                vars.insert(cur->name);
                return;
            }
            if (cur->kind == Term::Kind::IntLit || cur->kind == Term::Kind::TextLit) return;
            cur = cur->base.get();
        }
    };
    std::function<void(const Condition&)> from_condition = [&](const Condition& c) {
        if (const auto* cmp = std::get_if<Comparison>(&c.node)) {
            from_term(cmp->lhs);
            from_term(cmp->rhs);
        } else if (const auto* mem = std::get_if<Membership>(&c.node)) {
            from_term(mem->element);
            from_term(mem->list);
        } else if (const auto* conf = std::get_if<ConformanceTest>(&c.node)) {
            from_term(conf->subject);
        } else if (const auto* neg = std::get_if<Negation>(&c.node)) {
            for (const Condition& inner : neg->body) from_condition(inner);
        }
    };
    from_condition(condition);
    return vars.count(subject) != 0;
}

Pattern reverse_instantiation(const Registry& registry, const Pattern& pattern,
                              const Instantiation& inst) {
    if (inst.atom_value) return reverse_atom_flip(pattern, inst);

    // Every field of the fix must carry a distinct plain metavariable.
    std::map<std::string, std::string> fix_field_of;  // metavar -> fix field
    for (const FieldInit& init : inst.fields) {
        if (init.is_list) not_invertible("the fix introduces structure not bound from the subject");
        const auto* var = std::get_if<VarRef>(&init.values.at(0).node);
        if (!var) not_invertible("the fix introduces structure not bound from the subject");
        if (var->name == pattern.subject.name) not_invertible("the fix embeds the subject itself");
        if (!fix_field_of.emplace(var->name, init.field).second) {
            not_invertible("metavariable '" + var->name + "' is used more than once");
        }
    }

    std::set<std::string> metavar_names;
    for (const Binder& metavar : pattern.metavars) metavar_names.insert(metavar.name);

    // Split the where-clause into one binding per used metavariable
    // plus clauses that never touch the subject.
    std::map<std::string, std::string> bound_field_of;  // metavar -> subject field
    std::set<std::string> bound_fields;
    std::vector<const Condition*> carried;
    for (const Condition& condition : pattern.where) {
        std::string metavar;
        if (const std::string* field =
                binding_field(condition, pattern.subject.name, metavar_names, metavar)) {
            if (!fix_field_of.count(metavar)) {
                not_invertible("metavariable '" + metavar + "' is bound but unused");
            }
            if (!bound_field_of.emplace(metavar, *field).second) {
                not_invertible("metavariable '" + metavar + "' is bound more than once");
            }
            if (!bound_fields.insert(*field).second) {
                not_invertible("field '" + *field + "' of '" + pattern.subject.type +
                               "' is bound more than once");
            }
            continue;
        }
        if (mentions_subject(condition, pattern.subject.name)) {
            not_invertible("a condition on the subject cannot be transported");
        }
        carried.push_back(&condition);
    }
    for (const auto& [metavar, field] : fix_field_of) {
        (void)field;
        if (!bound_field_of.count(metavar)) {
            not_invertible("metavariable '" + metavar + "' is not bound from the subject");
        }
    }

    // Both shapes must consist of single fields only, fully covered,
    // or a seeded bug would not restore to the original text.
    const ConstructDef& subject_def = registry.construct(pattern.subject.type);
    const ConstructDef& fix_def = registry.construct(inst.construct);
    for (const ConstructDef* def : {&subject_def, &fix_def}) {
        for (const FieldDef& field : def->fields) {
            if (field.is_list) not_invertible("construct '" + def->name + "' has list fields");
        }
    }
    for (const auto& [metavar, field] : bound_field_of) {
        const FieldDef* fd = subject_def.field(field);
        if (!fd) {
            not_invertible("field '" + field + "' of '" + subject_def.name +
                           "' is not a single field");
        }
        (void)metavar;
    }
    for (const FieldDef& field : subject_def.fields) {
        if (!bound_fields.count(field.name)) {
            not_invertible("field '" + field.name + "' of '" + subject_def.name +
                           "' cannot be reconstructed");
        }
    }

    Pattern out = shell(pattern);
    out.subject.type = inst.construct;
    // Keep the used metavariables in their declaration order.
    for (const Binder& metavar : pattern.metavars) {
        if (fix_field_of.count(metavar.name)) out.metavars.push_back(metavar);
    }
    for (const Condition& condition : pattern.where) {
        std::string metavar;
        if (binding_field(condition, pattern.subject.name, metavar_names, metavar)) {
            Comparison binding;
            binding.lhs = Term::var(metavar);
            binding.op = CompareOp::Eq;
            binding.rhs = Term::access(Term::Kind::Field, Term::var(pattern.subject.name),
                                       fix_field_of.at(metavar));
            Condition out_condition;
            out_condition.node = std::move(binding);
            out.where.push_back(std::move(out_condition));
        } else {
            out.where.push_back(condition);
        }
    }
    Instantiation fix;
    fix.construct = pattern.subject.type;
    for (const FieldDef& field : subject_def.fields) {
        for (const auto& [metavar, bound] : bound_field_of) {
            if (bound != field.name) continue;
            FieldInit init;
            init.field = field.name;
            VarRef ref;
            ref.name = metavar;
            NodeExpr value;
            value.node = ref;
            init.values.push_back(std::move(value));
            fix.fields.push_back(std::move(init));
        }
    }
    out.fix = std::move(fix);
    return out;
}

} // namespace

Pattern reverse_pattern(const Registry& registry, const Pattern& pattern) {
    if (const auto* update = std::get_if<Update>(&pattern.fix)) {
        return reverse_update(pattern, *update);
    }
    return reverse_instantiation(registry, pattern, std::get<Instantiation>(pattern.fix));
}

} // namespace bugfix
