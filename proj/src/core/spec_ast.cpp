#include "spec_ast.hpp"

namespace bugfix {

std::string value_to_string(const Value& v) {
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    return std::get<std::string>(v);
}

const char* compare_op_text(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "/=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Var: return a.name == b.name;
        case Term::Kind::IntLit: return a.int_value == b.int_value;
        case Term::Kind::TextLit: return a.text_value == b.text_value;
        case Term::Kind::Field:
            if (a.name != b.name) return false;
            [[fallthrough]];
        default:
            return a.base && b.base && *a.base == *b.base;
    }
}

const std::string* term_root_var(const Term& t) {
    const Term* cur = &t;
    while (cur) {
        if (cur->kind == Term::Kind::Var) return &cur->name;
        if (cur->kind == Term::Kind::IntLit || cur->kind == Term::Kind::TextLit) return nullptr;
        cur = cur->base.get();
    }
    return nullptr;
}

const std::vector<std::string>& category_names() {
    static const std::vector<std::string> names = {
        "null_check", "incorrect_variable", "off_by_one", "order_operator", "true_false",
    };
    return names;
}

bool is_category_name(const std::string& s) {
    for (const auto& n : category_names())
        if (n == s) return true;
    return false;
}

} // namespace bugfix
