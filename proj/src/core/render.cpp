#include "render.hpp"

#include <limits>

#include "errors.hpp"

namespace bugfix {

namespace {

class Renderer {
public:
    Renderer(const Registry& registry, std::string language)
        : reg_(registry), lang_(std::move(language)) {}

    std::string render(const Node& node) {
        const SyntaxRule& rule = rule_for(node.construct());
        std::string out;
        int slots_emitted = 0;
        emit(rule.body, node, rule, out, slots_emitted);
        return out;
    }

private:
    const SyntaxRule& rule_for(const std::string& construct) {
        const SyntaxRule* rule = reg_.find_syntax(construct, lang_);
        if (!rule) {
            throw Error(ErrorKind::NotFound,
                        "no syntax for construct '" + construct + "' in language '" + lang_ + "'");
        }
        return *rule;
    }

    int prec_of(const Node& node) {
        const SyntaxRule& rule = rule_for(node.construct());
        return rule.prec ? *rule.prec : std::numeric_limits<int>::max();
    }

    void emit(const Template& tpl, const Node& node, const SyntaxRule& rule, std::string& out,
              int& slots_emitted) {
        for (const TemplateElement& element : tpl) {
            if (const auto* lit = std::get_if<TplLiteral>(&element.node)) {
                out += lit->text;
            } else if (std::get_if<TplValue>(&element.node)) {
                if (!node.value) {
                    throw Error(ErrorKind::Validation, "construct '" + node.construct() +
                                                           "' has no value to render");
                }
                out += value_to_string(*node.value);
            } else if (const auto* field = std::get_if<TplField>(&element.node)) {
                emit_field(*field, node, rule, out, slots_emitted);
            } else {
                const auto& cond = std::get<TplConditional>(element.node);
                const Template& branch =
                    guard_holds(cond.guard, node) ? cond.when_true : cond.when_false;
                emit(branch, node, rule, out, slots_emitted);
            }
        }
    }

    void emit_field(const TplField& field, const Node& node, const SyntaxRule& rule,
                    std::string& out, int& slots_emitted) {
        const FieldSlot* slot = node.slot(field.field);
        if (!slot) {
            throw Error(ErrorKind::Validation, "construct '" + node.construct() +
                                                   "' has no field '" + field.field + "'");
        }
        int requirement = 0;
        if (rule.prec && !slot->is_list) {
            requirement = (slots_emitted == 0 && !rule.nonassoc) ? *rule.prec : *rule.prec + 1;
        }
        ++slots_emitted;
        if (slot->is_list) {
            const std::string separator = field.separator ? *field.separator : ", ";
            for (std::size_t i = 0; i < slot->list.size(); ++i) {
                if (i != 0) out += separator;
                out += render(*slot->list[i]);
            }
            return;
        }
        if (!slot->single) {
            throw Error(ErrorKind::Validation, "construct '" + node.construct() +
                                                   "' is missing child '" + field.field + "'");
        }
        std::string text = render(*slot->single);
        if (prec_of(*slot->single) < requirement) {
            out += "(";
            out += text;
            out += ")";
        } else {
            out += text;
        }
    }

    bool guard_holds(const TplGuard& guard, const Node& node) {
        // Mirrors condition semantics: an unevaluable operand or a
        // kind mismatch makes the guard false.
        if (guard.kind == TplGuard::Kind::Count) {
            const FieldSlot* slot = node.slot(guard.field);
            if (!slot || !slot->is_list) return false;
            const auto* expected = std::get_if<std::int64_t>(&guard.literal);
            if (!expected) return false;
            return compare_ints(static_cast<std::int64_t>(slot->list.size()), guard.op, *expected);
        }
        const Value* actual = nullptr;
        if (guard.field.empty()) {
            if (node.value) actual = &*node.value;
        } else if (const Node* child = node.child(guard.field)) {
            if (child->value) actual = &*child->value;
        }
        if (!actual) return false;
        if (const auto* lhs = std::get_if<std::int64_t>(actual)) {
            const auto* rhs = std::get_if<std::int64_t>(&guard.literal);
            if (!rhs) return guard.op == CompareOp::Ne;
            return compare_ints(*lhs, guard.op, *rhs);
        }
        const auto* rhs = std::get_if<std::string>(&guard.literal);
        if (!rhs) return guard.op == CompareOp::Ne;
        const std::string& lhs = std::get<std::string>(*actual);
        switch (guard.op) {
            case CompareOp::Eq: return lhs == *rhs;
            case CompareOp::Ne: return lhs != *rhs;
            default: return false;  // order comparisons need integers
        }
    }

    static bool compare_ints(std::int64_t lhs, CompareOp op, std::int64_t rhs) {
        switch (op) {
            case CompareOp::Eq: return lhs == rhs;
            case CompareOp::Ne: return lhs != rhs;
            case CompareOp::Lt: return lhs < rhs;
            case CompareOp::Le: return lhs <= rhs;
            case CompareOp::Gt: return lhs > rhs;
            case CompareOp::Ge: return lhs >= rhs;
        }
        return false;
    }

    const Registry& reg_;
    std::string lang_;
};

} // namespace

std::string render_tree(const Registry& registry, const Node& root, const std::string& language) {
    return Renderer(registry, language).render(root);
}

} // namespace bugfix
