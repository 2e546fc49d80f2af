#ifndef BUGFIX_CORE_SPEC_AST_HPP
#define BUGFIX_CORE_SPEC_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bugfix {

// Atom payloads: integers (INT_LIT) or text (everything else).
using Value = std::variant<std::int64_t, std::string>;

std::string value_to_string(const Value& v);

// ==================================================================
// Constructs
// ==================================================================

struct FieldDef {
    std::string name;
    std::string type;     // construct name
    bool is_list = false;

    bool operator==(const FieldDef&) const = default;
};

struct ConstructDef {
    std::string name;
    bool is_atom = false;
    std::vector<std::string> parents;  // direct inherit edges
    std::vector<FieldDef> fields;      // empty for atoms

    const FieldDef* field(const std::string& fname) const {
        for (const auto& f : fields)
            if (f.name == fname) return &f;
        return nullptr;
    }

    bool operator==(const ConstructDef&) const = default;
};

// ==================================================================
// Syntax templates
// ==================================================================

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* compare_op_text(CompareOp op);

struct TemplateElement;

struct TplLiteral {
    std::string text;
    bool operator==(const TplLiteral&) const = default;
};

// The node's own value; only meaningful on atom constructs.
struct TplValue {
    bool operator==(const TplValue&) const = default;
};

// A field reference.  List fields are joined by `separator`; the
// default ", " is stored as nullopt so spellings normalise.
struct TplField {
    std::string field;
    std::optional<std::string> separator;
    bool operator==(const TplField&) const = default;
};

struct TplGuard {
    enum class Kind { Count, Value };
    std::string field;  // empty when guarding the node's own value
    Kind kind = Kind::Count;
    CompareOp op = CompareOp::Eq;
    Value literal;
    bool operator==(const TplGuard&) const = default;
};

struct TplConditional {
    TplGuard guard;
    std::vector<TemplateElement> when_true;
    std::vector<TemplateElement> when_false;
    bool operator==(const TplConditional&) const;
};

struct TemplateElement {
    std::variant<TplLiteral, TplValue, TplField, TplConditional> node;
    bool operator==(const TemplateElement&) const = default;
};

using Template = std::vector<TemplateElement>;

inline bool TplConditional::operator==(const TplConditional& o) const {
    return guard == o.guard && when_true == o.when_true && when_false == o.when_false;
}

struct SyntaxRule {
    std::string construct;
    std::string language;  // lowercase
    std::optional<int> prec;
    bool nonassoc = false;
    Template body;

    bool operator==(const SyntaxRule&) const = default;
};

// ==================================================================
// Terms and conditions
// ==================================================================

struct Term {
    enum class Kind { Var, Field, Index, Count, Value, Parent, Descendants, IntLit, TextLit };

    Kind kind = Kind::Var;
    std::string name;                  // Var: variable name; Field: field name
    std::int64_t int_value = 0;        // IntLit
    std::string text_value;            // TextLit
    std::shared_ptr<const Term> base;  // accessor kinds

    static Term var(std::string n) {
        Term t;
        t.kind = Kind::Var;
        t.name = std::move(n);
        return t;
    }
    static Term access(Kind k, Term base_term, std::string field_name = "") {
        Term t;
        t.kind = k;
        t.name = std::move(field_name);
        t.base = std::make_shared<Term>(std::move(base_term));
        return t;
    }
    static Term int_lit(std::int64_t v) {
        Term t;
        t.kind = Kind::IntLit;
        t.int_value = v;
        return t;
    }
    static Term text_lit(std::string v) {
        Term t;
        t.kind = Kind::TextLit;
        t.text_value = std::move(v);
        return t;
    }
};

bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

// The variable a term is rooted at, or empty for literals.
const std::string* term_root_var(const Term& t);

struct Condition;

struct Comparison {
    Term lhs;
    CompareOp op = CompareOp::Eq;
    Term rhs;
    bool operator==(const Comparison&) const;
};

struct Membership {
    Term element;
    Term list;
    bool operator==(const Membership&) const;
};

struct ConformanceTest {
    Term subject;
    std::string construct;
    bool negated = false;
    bool operator==(const ConformanceTest&) const;
};

struct Negation {
    std::vector<Condition> body;
    bool operator==(const Negation&) const;
};

struct Condition {
    std::variant<Comparison, Membership, ConformanceTest, Negation> node;
    bool operator==(const Condition&) const = default;
};

inline bool Comparison::operator==(const Comparison& o) const {
    return lhs == o.lhs && op == o.op && rhs == o.rhs;
}
inline bool Membership::operator==(const Membership& o) const {
    return element == o.element && list == o.list;
}
inline bool ConformanceTest::operator==(const ConformanceTest& o) const {
    return subject == o.subject && construct == o.construct && negated == o.negated;
}
inline bool Negation::operator==(const Negation& o) const { return body == o.body; }

// ==================================================================
// Fix expressions
// ==================================================================

struct NodeExpr;

// Reference to a bound node.  `old` is presentation only: all
// right-hand sides read the pre-state.
struct VarRef {
    std::string name;
    bool old_flag = false;
    bool operator==(const VarRef&) const = default;
};

struct FieldPath {
    std::string var;
    std::vector<std::string> path;  // at least one field
    bool operator==(const FieldPath&) const = default;
};

struct FieldInit {
    std::string field;
    bool is_list = false;
    std::vector<NodeExpr> values;  // exactly one unless is_list
    bool operator==(const FieldInit&) const;
};

struct Instantiation {
    std::string construct;
    std::optional<Value> atom_value;
    std::vector<FieldInit> fields;
    bool operator==(const Instantiation&) const;
};

struct NodeExpr {
    std::variant<VarRef, FieldPath, Instantiation> node;
    bool operator==(const NodeExpr&) const = default;
};

inline bool FieldInit::operator==(const FieldInit& o) const {
    return field == o.field && is_list == o.is_list && values == o.values;
}
inline bool Instantiation::operator==(const Instantiation& o) const {
    return construct == o.construct && atom_value == o.atom_value && fields == o.fields;
}

struct Subst {
    std::string target;  // metavariable being replaced
    NodeExpr expr;
    bool operator==(const Subst&) const = default;
};

struct Update {
    std::string binder;
    std::vector<Subst> substs;
    bool operator==(const Update&) const = default;
};

using FixExpr = std::variant<Update, Instantiation>;

// ==================================================================
// Patterns and units
// ==================================================================

struct Binder {
    std::string name;
    std::string type;
    bool operator==(const Binder&) const = default;
};

struct Pattern {
    std::string name;
    std::optional<std::string> category;
    bool seed_only = false;  // mutation direction; excluded from scanning
    Binder subject;
    std::vector<Binder> metavars;
    std::vector<Condition> where;
    FixExpr fix;

    bool operator==(const Pattern&) const = default;
};

struct SpecUnit {
    std::string name;  // source label for diagnostics
    std::vector<ConstructDef> constructs;
    std::vector<SyntaxRule> syntaxes;
    std::vector<Pattern> patterns;

    bool operator==(const SpecUnit& o) const {
        return constructs == o.constructs && syntaxes == o.syntaxes && patterns == o.patterns;
    }
};

// Category tags admitted on patterns, in reporting order.
const std::vector<std::string>& category_names();
bool is_category_name(const std::string& s);

} // namespace bugfix

#endif
