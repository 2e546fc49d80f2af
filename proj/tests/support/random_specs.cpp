#include "random_specs.hpp"

#include <array>
#include <set>

namespace bugfix::testing {

namespace {

constexpr std::array kConstructNames = {"ALPHA", "BETA", "GAMMA", "DELTA", "OMEGA",
                                        "NODE2", "LEAF",  "PAIR",  "WRAP"};
constexpr std::array kFieldNames = {"fa", "fb", "items", "kids", "lhs2", "rhs2"};
constexpr std::array kVarNames = {"x", "y", "z", "w", "v2"};
constexpr std::array kPatternNames = {"P_ONE", "P_TWO", "P_THREE", "FLIP", "SWAP_IT"};
constexpr std::array kLanguages = {"mini", "java", "eiffel", "go"};
constexpr std::array kLiteralTexts = {"", " ", "(", ") ", "; ", "->", "\n", "\t", "\"q\"", "\\"};
constexpr std::array kSeparators = {" ", "\n", "; ", ""};

} // namespace

int SpecGen::pick(int bound) {
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(bound));
}

std::string SpecGen::construct_name(const SpecUnit& unit) {
    return unit.constructs[pick(static_cast<int>(unit.constructs.size()))].name;
}

void SpecGen::add_constructs(SpecUnit& unit) {
    const int count = 1 + pick(4);
    std::set<std::string> used;
    for (int i = 0; i < count; ++i) {
        ConstructDef def;
        def.name = kConstructNames[pick(kConstructNames.size())];
        if (!used.insert(def.name).second) continue;
        def.is_atom = pick(4) == 0;
        if (!unit.constructs.empty() && pick(2) == 0) {
            std::set<std::string> parents;
            const int edges = 1 + pick(2);
            for (int j = 0; j < edges; ++j) parents.insert(construct_name(unit));
            def.parents.assign(parents.begin(), parents.end());
        }
        if (!def.is_atom && pick(3) != 0) {
            std::set<std::string> names;
            const int fields = 1 + pick(3);
            for (int j = 0; j < fields; ++j) {
                FieldDef field;
                field.name = kFieldNames[pick(kFieldNames.size())];
                if (!names.insert(field.name).second) continue;
                field.type = pick(3) == 0 || unit.constructs.empty()
                                 ? std::string(kConstructNames[pick(kConstructNames.size())])
                                 : construct_name(unit);
                field.is_list = pick(3) == 0;
                def.fields.push_back(std::move(field));
            }
        }
        unit.constructs.push_back(std::move(def));
    }
}

std::vector<TemplateElement> SpecGen::template_body(const ConstructDef& construct, int depth) {
    std::vector<TemplateElement> body;
    const int length = depth == 0 ? 1 + pick(3) : pick(3);
    for (int i = 0; i < length; ++i) {
        TemplateElement element;
        const int kind = pick(6);
        if (kind == 0 && construct.is_atom) {
            element.node = TplValue{};
        } else if (kind <= 2 || construct.fields.empty()) {
            element.node = TplLiteral{std::string(kLiteralTexts[pick(kLiteralTexts.size())])};
        } else if (kind <= 4 || depth > 0) {
            const FieldDef& field = construct.fields[pick(static_cast<int>(construct.fields.size()))];
            TplField ref;
            ref.field = field.name;
            if (field.is_list && pick(2) == 0)
                ref.separator = std::string(kSeparators[pick(kSeparators.size())]);
            element.node = std::move(ref);
        } else {
            TplConditional conditional;
            if (construct.is_atom || (pick(3) == 0 && construct.fields.empty())) {
                conditional.guard.kind = TplGuard::Kind::Value;
                conditional.guard.field.clear();
                conditional.guard.literal = pick(2) == 0 ? Value(std::int64_t{pick(10) - 2})
                                                         : Value(std::string("lit"));
            } else if (construct.fields.empty()) {
                element.node = TplLiteral{"?"};
                body.push_back(std::move(element));
                continue;
            } else {
                const FieldDef& field =
                    construct.fields[pick(static_cast<int>(construct.fields.size()))];
                if (field.is_list && pick(2) == 0) {
                    conditional.guard.kind = TplGuard::Kind::Count;
                    conditional.guard.literal = Value(std::int64_t{pick(4)});
                } else {
                    conditional.guard.kind = TplGuard::Kind::Value;
                    conditional.guard.literal = pick(2) == 0 ? Value(std::int64_t{pick(10) - 2})
                                                             : Value(std::string("on"));
                }
                conditional.guard.field = field.name;
            }
            conditional.guard.op = static_cast<CompareOp>(pick(6));
            conditional.when_true = template_body(construct, depth + 1);
            conditional.when_false = template_body(construct, depth + 1);
            element.node = std::move(conditional);
        }
        body.push_back(std::move(element));
    }
    return body;
}

void SpecGen::add_syntaxes(SpecUnit& unit) {
    const int count = pick(4);
    std::set<std::pair<std::string, std::string>> used;
    for (int i = 0; i < count; ++i) {
        SyntaxRule rule;
        const ConstructDef& construct =
            unit.constructs[pick(static_cast<int>(unit.constructs.size()))];
        rule.construct = construct.name;
        rule.language = kLanguages[pick(kLanguages.size())];
        if (!used.insert({rule.construct, rule.language}).second) continue;
        if (pick(2) == 0) {
            rule.prec = pick(10);
            rule.nonassoc = pick(2) == 0;
        }
        rule.body = template_body(construct, 0);
        unit.syntaxes.push_back(std::move(rule));
    }
}

Term SpecGen::term(const std::vector<std::string>& vars, int depth) {
    if (depth > 2 || pick(3) == 0) {
        switch (pick(4)) {
            case 0: return Term::int_lit(pick(12) - 2);
            case 1: return Term::text_lit("t");
            default: return Term::var(vars[pick(static_cast<int>(vars.size()))]);
        }
    }
    Term base = term(vars, depth + 1);
    if (term_root_var(base) == nullptr) base = Term::var(vars[pick(static_cast<int>(vars.size()))]);
    switch (pick(6)) {
        case 0: return Term::access(Term::Kind::Field, std::move(base),
                                    std::string(kFieldNames[pick(kFieldNames.size())]));
        case 1: return Term::access(Term::Kind::Index, std::move(base));
        case 2: return Term::access(Term::Kind::Count,
                                    Term::access(Term::Kind::Field, std::move(base),
                                                 std::string(kFieldNames[pick(kFieldNames.size())])));
        case 3: return Term::access(Term::Kind::Value, std::move(base));
        case 4: return Term::access(Term::Kind::Parent, std::move(base));
        default: return Term::access(Term::Kind::Descendants, std::move(base));
    }
}

Condition SpecGen::condition(const std::vector<std::string>& vars, int depth) {
    Condition result;
    const int kind = pick(depth == 0 ? 4 : 3);
    if (kind == 0) {
        Comparison cmp;
        cmp.lhs = term(vars, 1);
        cmp.op = static_cast<CompareOp>(pick(6));
        cmp.rhs = term(vars, 1);
        result.node = std::move(cmp);
    } else if (kind == 1) {
        Membership membership;
        membership.element = Term::var(vars[pick(static_cast<int>(vars.size()))]);
        membership.list = pick(2) == 0
                              ? Term::access(Term::Kind::Field,
                                             Term::var(vars[pick(static_cast<int>(vars.size()))]),
                                             std::string(kFieldNames[pick(kFieldNames.size())]))
                              : Term::access(Term::Kind::Descendants,
                                             Term::var(vars[pick(static_cast<int>(vars.size()))]));
        result.node = std::move(membership);
    } else if (kind == 2) {
        ConformanceTest test;
        test.subject = term(vars, 2);
        if (term_root_var(test.subject) == nullptr)
            test.subject = Term::var(vars[pick(static_cast<int>(vars.size()))]);
        test.construct = kConstructNames[pick(kConstructNames.size())];
        test.negated = pick(2) == 0;
        result.node = std::move(test);
    } else {
        Negation negation;
        const int inner = 1 + pick(3);
        for (int i = 0; i < inner; ++i) negation.body.push_back(condition(vars, depth + 1));
        result.node = std::move(negation);
    }
    return result;
}

NodeExpr SpecGen::node_expr(const SpecUnit& unit, const std::vector<std::string>& vars,
                            int depth) {
    NodeExpr expr;
    const int kind = pick(depth > 1 ? 3 : 4);
    if (kind == 0) {
        expr.node = VarRef{vars[pick(static_cast<int>(vars.size()))], pick(3) == 0};
    } else if (kind == 1) {
        FieldPath path;
        path.var = vars[pick(static_cast<int>(vars.size()))];
        const int hops = 1 + pick(2);
        for (int i = 0; i < hops; ++i)
            path.path.push_back(std::string(kFieldNames[pick(kFieldNames.size())]));
        expr.node = std::move(path);
    } else if (kind == 2) {
        expr.node = Instantiation{"WRAP", Value(std::int64_t{pick(5)}), {}};
        auto& inst = std::get<Instantiation>(expr.node);
        inst.construct = construct_name(unit);
        if (pick(2) == 0) {
            inst.atom_value = pick(2) == 0 ? Value(std::int64_t{pick(7) - 1})
                                           : Value(std::string("name"));
            inst.fields.clear();
        } else {
            inst.atom_value.reset();
        }
    } else {
        expr.node = instantiation(unit, vars, depth + 1);
    }
    return expr;
}

Instantiation SpecGen::instantiation(const SpecUnit& unit, const std::vector<std::string>& vars,
                                     int depth) {
    Instantiation inst;
    inst.construct = construct_name(unit);
    if (pick(3) == 0) {
        inst.atom_value = pick(2) == 0 ? Value(std::int64_t{pick(9)}) : Value(std::string("v"));
        return inst;
    }
    std::set<std::string> used;
    const int count = pick(3);
    for (int i = 0; i < count; ++i) {
        FieldInit init;
        init.field = kFieldNames[pick(kFieldNames.size())];
        if (!used.insert(init.field).second) continue;
        init.is_list = pick(3) == 0;
        const int values = init.is_list ? pick(3) : 1;
        for (int j = 0; j < values; ++j) init.values.push_back(node_expr(unit, vars, depth + 1));
        inst.fields.push_back(std::move(init));
    }
    return inst;
}

void SpecGen::add_patterns(SpecUnit& unit) {
    const int count = pick(3);
    std::set<std::string> used;
    for (int i = 0; i < count; ++i) {
        Pattern pattern;
        pattern.name = kPatternNames[pick(kPatternNames.size())];
        if (!used.insert(pattern.name).second) continue;
        if (pick(2) == 0) {
            const auto& names = category_names();
            pattern.category = names[pick(static_cast<int>(names.size()))];
        }
        pattern.seed_only = pick(3) == 0;
        pattern.subject = {"s", construct_name(unit)};

        std::vector<std::string> vars = {"s"};
        std::set<std::string> var_names = {"s"};
        const int metavars = pick(4);
        for (int j = 0; j < metavars; ++j) {
            std::string name = kVarNames[pick(kVarNames.size())];
            if (!var_names.insert(name).second) continue;
            pattern.metavars.push_back({name, construct_name(unit)});
            vars.push_back(std::move(name));
        }

        const int conditions = pick(4);
        for (int j = 0; j < conditions; ++j) pattern.where.push_back(condition(vars, 0));

        if (pick(2) == 0 || pattern.metavars.empty()) {
            pattern.fix = instantiation(unit, vars, 0);
        } else {
            Update update;
            update.binder = "s";
            std::set<int> targets;
            const int substs = 1 + pick(static_cast<int>(pattern.metavars.size()));
            for (int j = 0; j < substs; ++j) {
                const int target = pick(static_cast<int>(pattern.metavars.size()));
                if (!targets.insert(target).second) continue;
                Subst subst;
                subst.target = pattern.metavars[target].name;
                subst.expr = node_expr(unit, vars, 0);
                update.substs.push_back(std::move(subst));
            }
            pattern.fix = std::move(update);
        }
        unit.patterns.push_back(std::move(pattern));
    }
}

SpecUnit SpecGen::unit() {
    SpecUnit result;
    result.name = "generated";
    add_constructs(result);
    add_syntaxes(result);
    add_patterns(result);
    return result;
}

} // namespace bugfix::testing
