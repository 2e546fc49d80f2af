#include "spec_printer.hpp"

#include <sstream>

namespace bugfix {

namespace {

std::string quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

// A value as it appears in source: integers bare, text quoted.
std::string value_literal_text(const Value& value) {
    if (const auto* n = std::get_if<std::int64_t>(&value)) return std::to_string(*n);
    return quote(std::get<std::string>(value));
}

std::string term_text(const Term& term) {
    switch (term.kind) {
        case Term::Kind::Var:
            return term.name;
        case Term::Kind::Field:
            return term_text(*term.base) + "." + term.name;
        case Term::Kind::Index:
            return term_text(*term.base) + ".index";
        case Term::Kind::Count:
            return term_text(*term.base) + ".count";
        case Term::Kind::Value:
            return term_text(*term.base) + ".value";
        case Term::Kind::Parent:
            return term_text(*term.base) + ".parent";
        case Term::Kind::Descendants:
            return "descendants(" + term_text(*term.base) + ")";
        case Term::Kind::IntLit:
            return std::to_string(term.int_value);
        case Term::Kind::TextLit:
            return quote(term.text_value);
    }
    return "";
}

std::string condition_text(const Condition& condition) {
    std::string out;
    if (const auto* cmp = std::get_if<Comparison>(&condition.node)) {
        out = term_text(cmp->lhs) + " " + compare_op_text(cmp->op) + " " + term_text(cmp->rhs);
    } else if (const auto* mem = std::get_if<Membership>(&condition.node)) {
        out = term_text(mem->element) + " in " + term_text(mem->list);
    } else if (const auto* conf = std::get_if<ConformanceTest>(&condition.node)) {
        out = term_text(conf->subject) + " is " + (conf->negated ? "not " : "") + conf->construct;
    } else if (const auto* neg = std::get_if<Negation>(&condition.node)) {
        out = "not (";
        for (std::size_t i = 0; i < neg->body.size(); ++i) {
            if (i != 0) out += "; ";
            out += condition_text(neg->body[i]);
        }
        out += ")";
    }
    return out;
}

std::string template_text(const Template& tpl);

std::string guard_text(const TplGuard& guard) {
    std::string lhs;
    switch (guard.kind) {
        case TplGuard::Kind::Count: lhs = guard.field + ".count"; break;
        case TplGuard::Kind::Value: lhs = guard.field.empty() ? "value" : guard.field + ".value"; break;
    }
    return lhs + " " + compare_op_text(guard.op) + " " + value_literal_text(guard.literal);
}

std::string element_text(const TemplateElement& element) {
    if (const auto* lit = std::get_if<TplLiteral>(&element.node)) {
        return quote(lit->text);
    }
    if (std::get_if<TplValue>(&element.node)) {
        return "value";
    }
    if (const auto* field = std::get_if<TplField>(&element.node)) {
        std::string out = field->field;
        if (field->separator) out += "{" + quote(*field->separator) + "}";
        return out;
    }
    const auto& cond = std::get<TplConditional>(element.node);
    std::string out = "[" + guard_text(cond.guard) + " ->";
    std::string then_text = template_text(cond.when_true);
    if (!then_text.empty()) out += " " + then_text;
    out += " |";
    std::string else_text = template_text(cond.when_false);
    if (!else_text.empty()) out += " " + else_text;
    out += "]";
    return out;
}

std::string template_text(const Template& tpl) {
    std::string out;
    for (std::size_t i = 0; i < tpl.size(); ++i) {
        if (i != 0) out += " ";
        out += element_text(tpl[i]);
    }
    return out;
}

// Node expressions use literal sugar in nested positions: INT_LIT
// prints as the bare integer and the keyword atoms with canonical
// values print as true/false/null.  The root of an instantiation fix
// keeps the construct name so the fix form stays recognizable.
std::string node_expr_text(const NodeExpr& expr, bool root);

std::string instantiation_text(const Instantiation& inst, bool root) {
    if (inst.atom_value) {
        if (!root) {
            if (inst.construct == "INT_LIT" && std::holds_alternative<std::int64_t>(*inst.atom_value)) {
                return std::to_string(std::get<std::int64_t>(*inst.atom_value));
            }
            if (const auto* text = std::get_if<std::string>(&*inst.atom_value)) {
                if (inst.construct == "TRUE_LIT" && *text == "true") return "true";
                if (inst.construct == "FALSE_LIT" && *text == "false") return "false";
                if (inst.construct == "NULL_LIT" && *text == "null") return "null";
            }
        }
        if (const auto* text = std::get_if<std::string>(&*inst.atom_value)) {
            if ((inst.construct == "TRUE_LIT" && *text == "true") ||
                (inst.construct == "FALSE_LIT" && *text == "false") ||
                (inst.construct == "NULL_LIT" && *text == "null")) {
                return inst.construct;
            }
        }
        return inst.construct + " " + value_literal_text(*inst.atom_value);
    }
    if (inst.fields.empty()) {
        return inst.construct;
    }
    std::string out = inst.construct + " [";
    for (std::size_t i = 0; i < inst.fields.size(); ++i) {
        if (i != 0) out += ", ";
        const FieldInit& init = inst.fields[i];
        out += init.field + " <- ";
        if (init.is_list) {
            out += "[";
            for (std::size_t j = 0; j < init.values.size(); ++j) {
                if (j != 0) out += ", ";
                out += node_expr_text(init.values[j], false);
            }
            out += "]";
        } else {
            out += node_expr_text(init.values.at(0), false);
        }
    }
    out += "]";
    return out;
}

std::string node_expr_text(const NodeExpr& expr, bool root) {
    if (const auto* var = std::get_if<VarRef>(&expr.node)) {
        return (var->old_flag ? "old " : "") + var->name;
    }
    if (const auto* path = std::get_if<FieldPath>(&expr.node)) {
        std::string out = path->var;
        for (const std::string& field : path->path) out += "." + field;
        return out;
    }
    return instantiation_text(std::get<Instantiation>(expr.node), root);
}

std::string fix_text(const FixExpr& fix) {
    if (const auto* update = std::get_if<Update>(&fix)) {
        std::string out = update->binder + " [";
        for (std::size_t i = 0; i < update->substs.size(); ++i) {
            if (i != 0) out += ", ";
            out += update->substs[i].target + " <- " + node_expr_text(update->substs[i].expr, false);
        }
        out += "]";
        return out;
    }
    return instantiation_text(std::get<Instantiation>(fix), true);
}

void print_construct(std::ostringstream& out, const ConstructDef& construct) {
    out << "construct " << construct.name;
    if (construct.is_atom) out << " atom";
    if (!construct.parents.empty()) {
        out << " inherit ";
        for (std::size_t i = 0; i < construct.parents.size(); ++i) {
            if (i != 0) out << ", ";
            out << construct.parents[i];
        }
    }
    if (construct.fields.empty()) {
        out << " end\n";
        return;
    }
    out << " feature\n";
    for (const FieldDef& field : construct.fields) {
        out << "    " << field.name << ": " << field.type;
        if (field.is_list) out << "*";
        out << "\n";
    }
    out << "end\n";
}

void print_syntax(std::ostringstream& out, const SyntaxRule& rule) {
    out << "syntax " << rule.construct << " for " << rule.language;
    if (rule.prec) {
        out << " prec " << *rule.prec;
        if (rule.nonassoc) out << " nonassoc";
    }
    out << ": " << template_text(rule.body) << "\n";
}

void print_pattern(std::ostringstream& out, const Pattern& pattern) {
    out << "pattern " << pattern.name;
    if (pattern.category) out << " category " << *pattern.category;
    if (pattern.seed_only) out << " seed";
    out << " for\n";
    out << "    " << pattern.subject.name << ": " << pattern.subject.type << "\n";
    if (!pattern.metavars.empty()) {
        out << "with\n";
        // Consecutive metavariables of one type print as a group.
        std::size_t i = 0;
        while (i < pattern.metavars.size()) {
            std::size_t j = i;
            while (j + 1 < pattern.metavars.size() &&
                   pattern.metavars[j + 1].type == pattern.metavars[i].type) {
                ++j;
            }
            out << "    ";
            for (std::size_t k = i; k <= j; ++k) {
                if (k != i) out << ", ";
                out << pattern.metavars[k].name;
            }
            out << ": " << pattern.metavars[i].type << "\n";
            i = j + 1;
        }
    }
    if (!pattern.where.empty()) {
        out << "where\n";
        for (const Condition& condition : pattern.where) {
            out << "    " << condition_text(condition) << "\n";
        }
    }
    out << "fix\n";
    out << "    " << fix_text(pattern.fix) << "\n";
    out << "end\n";
}

} // namespace

std::string render_spec(const SpecUnit& unit) {
    std::ostringstream out;
    bool first = true;
    for (const ConstructDef& construct : unit.constructs) {
        if (!first) out << "\n";
        first = false;
        print_construct(out, construct);
    }
    for (const SyntaxRule& rule : unit.syntaxes) {
        if (!first) out << "\n";
        first = false;
        print_syntax(out, rule);
    }
    for (const Pattern& pattern : unit.patterns) {
        if (!first) out << "\n";
        first = false;
        print_pattern(out, pattern);
    }
    return out.str();
}

std::string render_pattern(const Pattern& pattern) {
    std::ostringstream out;
    print_pattern(out, pattern);
    return out.str();
}

std::string render_condition(const Condition& condition) {
    return condition_text(condition);
}

std::string render_term(const Term& term) {
    return term_text(term);
}

} // namespace bugfix
