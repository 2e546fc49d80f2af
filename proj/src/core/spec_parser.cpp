#include "spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "errors.hpp"
#include "spec_lexer.hpp"

namespace bugfix {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text, std::string unit_name)
        : tokens_(lex_spec(text)), unit_name_(std::move(unit_name)) {}

    SpecUnit run() {
        SpecUnit unit;
        unit.name = unit_name_;
        skip_newlines();
        while (!at(Tok::End)) {
            if (at_word("construct")) {
                add_construct(unit, parse_construct());
            } else if (at_word("syntax")) {
                add_syntax(unit, parse_syntax());
            } else if (at_word("pattern")) {
                add_pattern(unit, parse_pattern());
            } else {
                fail("expected 'construct', 'syntax', or 'pattern'");
            }
            skip_newlines();
        }
        return unit;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string unit_name_;

    // ----- token plumbing ------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_word(const char* word) const {
        return peek().kind == Tok::LowerName && peek().text == word;
    }
    Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        throw SyntaxError(t.line, t.column, t.kind == Tok::End ? "end of input" : t.text,
                          message);
    }
    [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
        throw SyntaxError(t.line, t.column, t.text, message);
    }

    Token expect(Tok kind, const char* what) {
        if (!at(kind)) fail(std::string("expected ") + what);
        return take();
    }
    void expect_word(const char* word) {
        if (!at_word(word)) fail(std::string("expected '") + word + "'");
        take();
    }
    void skip_newlines() {
        while (at(Tok::Newline)) take();
    }
    // Separator between clauses of one declaration: newline or ';'.
    bool skip_separator() {
        bool any = false;
        while (at(Tok::Newline) || at(Tok::Semicolon)) {
            take();
            any = true;
        }
        return any;
    }

    Token expect_upper(const char* what) {
        if (!at(Tok::UpperName)) fail(std::string("expected ") + what);
        return take();
    }
    Token expect_lower(const char* what) {
        if (!at(Tok::LowerName)) fail(std::string("expected ") + what);
        Token t = take();
        if (is_spec_keyword(t.text)) fail_at(t, "'" + t.text + "' is a reserved word");
        return t;
    }

    // ----- unit assembly -------------------------------------------

    void add_construct(SpecUnit& unit, std::pair<ConstructDef, Token> parsed) {
        for (const auto& c : unit.constructs)
            if (c.name == parsed.first.name)
                fail_at(parsed.second, "duplicate construct '" + parsed.first.name + "'");
        unit.constructs.push_back(std::move(parsed.first));
    }
    void add_syntax(SpecUnit& unit, std::pair<SyntaxRule, Token> parsed) {
        for (const auto& s : unit.syntaxes)
            if (s.construct == parsed.first.construct && s.language == parsed.first.language)
                fail_at(parsed.second, "duplicate syntax for " + parsed.first.construct +
                                           "/" + parsed.first.language);
        unit.syntaxes.push_back(std::move(parsed.first));
    }
    void add_pattern(SpecUnit& unit, std::pair<Pattern, Token> parsed) {
        for (const auto& p : unit.patterns)
            if (p.name == parsed.first.name)
                fail_at(parsed.second, "duplicate pattern '" + parsed.first.name + "'");
        unit.patterns.push_back(std::move(parsed.first));
    }

    // ----- constructs ----------------------------------------------

    std::pair<ConstructDef, Token> parse_construct() {
        expect_word("construct");
        Token name = expect_upper("construct name");
        ConstructDef def;
        def.name = name.text;
        skip_newlines();
        if (at_word("atom")) {
            take();
            def.is_atom = true;
            skip_newlines();
        }
        if (at_word("inherit")) {
            take();
            while (true) {
                Token parent = expect_upper("parent construct name");
                for (const auto& p : def.parents)
                    if (p == parent.text)
                        fail_at(parent, "duplicate parent '" + parent.text + "'");
                def.parents.push_back(parent.text);
                if (at(Tok::Comma)) {
                    take();
                    continue;
                }
                break;
            }
            skip_newlines();
        }
        if (at_word("feature")) {
            Token feature = take();
            if (def.is_atom)
                fail_at(feature, "atom construct '" + def.name + "' cannot declare fields");
            skip_separator();
            while (!at_word("end")) {
                parse_field_group(def);
                if (!skip_separator() && !at_word("end"))
                    fail("expected newline, ';', or 'end' after field");
            }
        }
        skip_newlines();
        expect_word("end");
        return {std::move(def), name};
    }

    void parse_field_group(ConstructDef& def) {
        std::vector<Token> names;
        names.push_back(expect_lower("field name"));
        while (at(Tok::Comma)) {
            take();
            names.push_back(expect_lower("field name"));
        }
        expect(Tok::Colon, "':'");
        Token type = expect_upper("field type");
        bool is_list = false;
        if (at(Tok::Star)) {
            take();
            is_list = true;
        }
        for (const auto& n : names) {
            if (n.text == "value" || n.text == "index" || n.text == "count" ||
                n.text == "parent")
                fail_at(n, "'" + n.text + "' is reserved and cannot name a field");
            if (def.field(n.text))
                fail_at(n, "duplicate field '" + n.text + "'");
            def.fields.push_back(FieldDef{n.text, type.text, is_list});
        }
    }

    // ----- syntax rules --------------------------------------------

    std::pair<SyntaxRule, Token> parse_syntax() {
        expect_word("syntax");
        Token name = expect_upper("construct name");
        expect_word("for");
        if (!at(Tok::LowerName) && !at(Tok::UpperName) && !at(Tok::MixedName))
            fail("expected language name");
        Token lang = take();

        SyntaxRule rule;
        rule.construct = name.text;
        rule.language = lang.text;
        std::transform(rule.language.begin(), rule.language.end(), rule.language.begin(),
                       [](unsigned char c) { return std::tolower(c); });

        if (at_word("prec")) {
            take();
            Token level = expect(Tok::Int, "precedence level");
            if (level.int_value < 0) fail_at(level, "precedence cannot be negative");
            rule.prec = static_cast<int>(level.int_value);
            if (at_word("nonassoc")) {
                take();
                rule.nonassoc = true;
            }
        }
        expect(Tok::Colon, "':'");
        rule.body = parse_template_run({Tok::Newline, Tok::End});
        return {std::move(rule), name};
    }

    // Template elements until one of `stops` at this nesting level.
    Template parse_template_run(std::initializer_list<Tok> stops) {
        auto stopped = [&] {
            for (Tok s : stops)
                if (at(s)) return true;
            return at(Tok::End);
        };
        Template body;
        while (!stopped()) {
            if (at(Tok::String)) {
                body.push_back({TplLiteral{take().string_value}});
            } else if (at_word("value")) {
                take();
                body.push_back({TplValue{}});
            } else if (at(Tok::LowerName)) {
                Token field = expect_lower("field name");
                TplField ref;
                ref.field = field.text;
                if (at(Tok::LBrace)) {
                    take();
                    Token sep = expect(Tok::String, "separator string");
                    expect(Tok::RBrace, "'}'");
                    if (sep.string_value != ", ") ref.separator = sep.string_value;
                }
                body.push_back({std::move(ref)});
            } else if (at(Tok::LBracket)) {
                take();
                skip_newlines();
                TplConditional cond;
                cond.guard = parse_guard();
                expect(Tok::Arrow, "'->'");
                cond.when_true = parse_template_run({Tok::Pipe, Tok::RBracket});
                expect(Tok::Pipe, "'|'");
                cond.when_false = parse_template_run({Tok::Pipe, Tok::RBracket});
                if (at(Tok::Pipe)) fail("a conditional template has exactly one '|'");
                expect(Tok::RBracket, "']'");
                body.push_back({std::move(cond)});
            } else if (at(Tok::Newline)) {
                // inside a conditional newlines are insignificant
                take();
            } else {
                fail("expected template element");
            }
        }
        return body;
    }

    TplGuard parse_guard() {
        TplGuard guard;
        if (at_word("value")) {
            take();
            guard.kind = TplGuard::Kind::Value;
        } else {
            Token field = expect_lower("guard field");
            guard.field = field.text;
            expect(Tok::Dot, "'.'");
            if (at_word("count")) {
                take();
                guard.kind = TplGuard::Kind::Count;
            } else if (at_word("value")) {
                take();
                guard.kind = TplGuard::Kind::Value;
            } else {
                fail("expected 'count' or 'value'");
            }
        }
        guard.op = parse_compare_op();
        if (at(Tok::Int)) {
            guard.literal = take().int_value;
        } else if (at(Tok::String)) {
            guard.literal = take().string_value;
        } else {
            fail("expected integer or string guard literal");
        }
        if (guard.kind == TplGuard::Kind::Count &&
            !std::holds_alternative<std::int64_t>(guard.literal))
            fail("count guards compare against integers");
        return guard;
    }

    CompareOp parse_compare_op() {
        switch (peek().kind) {
            case Tok::Eq: take(); return CompareOp::Eq;
            case Tok::Ne: take(); return CompareOp::Ne;
            case Tok::Lt: take(); return CompareOp::Lt;
            case Tok::Le: take(); return CompareOp::Le;
            case Tok::Gt: take(); return CompareOp::Gt;
            case Tok::Ge: take(); return CompareOp::Ge;
            default: fail("expected comparison operator");
        }
    }

    // ----- patterns ------------------------------------------------

    std::pair<Pattern, Token> parse_pattern() {
        expect_word("pattern");
        Token name = expect_upper("pattern name");
        Pattern pat;
        pat.name = name.text;

        if (at_word("category")) {
            take();
            Token cat = expect_lower("category name");
            if (!is_category_name(cat.text))
                fail_at(cat, "unknown category '" + cat.text + "'");
            pat.category = cat.text;
        }
        if (at_word("seed")) {
            take();
            pat.seed_only = true;
        }
        expect_word("for");
        skip_newlines();
        Token subject_name = expect_lower("subject binder");
        expect(Tok::Colon, "':'");
        pat.subject.name = subject_name.text;
        pat.subject.type = expect_upper("subject type").text;
        skip_separator();

        std::set<std::string> declared{pat.subject.name};
        if (at_word("with")) {
            take();
            skip_separator();
            while (!at_word("where") && !at_word("fix")) {
                std::vector<Token> names;
                names.push_back(expect_lower("metavariable name"));
                while (at(Tok::Comma)) {
                    take();
                    names.push_back(expect_lower("metavariable name"));
                }
                expect(Tok::Colon, "':'");
                Token type = expect_upper("metavariable type");
                for (const auto& n : names) {
                    if (!declared.insert(n.text).second)
                        fail_at(n, "duplicate name '" + n.text + "'");
                    pat.metavars.push_back(Binder{n.text, type.text});
                }
                if (!skip_separator() && !at_word("where") && !at_word("fix"))
                    fail("expected newline or ';' after metavariable declaration");
            }
        }
        if (at_word("where")) {
            take();
            skip_separator();
            while (!at_word("fix")) {
                pat.where.push_back(parse_condition(declared));
                if (!skip_separator() && !at_word("fix"))
                    fail("expected newline or ';' after condition");
            }
        }
        expect_word("fix");
        skip_newlines();
        pat.fix = parse_fix(pat, declared);
        skip_separator();
        expect_word("end");
        return {std::move(pat), name};
    }

    // ----- conditions ----------------------------------------------

    Condition parse_condition(const std::set<std::string>& declared) {
        if (at_word("not") && peek(1).kind == Tok::LParen) {
            take();
            take();
            skip_newlines();
            Negation neg;
            neg.body.push_back(parse_condition(declared));
            while (at(Tok::Semicolon) || at(Tok::Newline)) {
                skip_separator();
                if (at(Tok::RParen)) break;
                neg.body.push_back(parse_condition(declared));
            }
            expect(Tok::RParen, "')'");
            return {std::move(neg)};
        }

        Term lhs = parse_term(declared);
        if (at_word("in")) {
            take();
            Membership m;
            m.element = std::move(lhs);
            m.list = parse_term(declared);
            return {std::move(m)};
        }
        if (at_word("is")) {
            take();
            ConformanceTest test;
            test.subject = std::move(lhs);
            if (at_word("not")) {
                take();
                test.negated = true;
            }
            test.construct = expect_upper("construct name").text;
            return {std::move(test)};
        }
        Comparison cmp;
        cmp.lhs = std::move(lhs);
        cmp.op = parse_compare_op();
        cmp.rhs = parse_term(declared);
        return {std::move(cmp)};
    }

    Term parse_term(const std::set<std::string>& declared) {
        Term base;
        if (at(Tok::Int)) {
            base = Term::int_lit(take().int_value);
        } else if (at(Tok::String)) {
            base = Term::text_lit(take().string_value);
        } else if (at_word("descendants")) {
            take();
            expect(Tok::LParen, "'('");
            Term inner = parse_term(declared);
            expect(Tok::RParen, "')'");
            base = Term::access(Term::Kind::Descendants, std::move(inner));
        } else {
            Token var = expect_lower("metavariable");
            if (!declared.count(var.text))
                fail_at(var, "undeclared name '" + var.text + "'");
            base = Term::var(var.text);
        }
        while (at(Tok::Dot)) {
            take();
            if (at_word("index")) {
                take();
                base = Term::access(Term::Kind::Index, std::move(base));
            } else if (at_word("count")) {
                take();
                base = Term::access(Term::Kind::Count, std::move(base));
            } else if (at_word("value")) {
                take();
                base = Term::access(Term::Kind::Value, std::move(base));
            } else if (at_word("parent")) {
                take();
                base = Term::access(Term::Kind::Parent, std::move(base));
            } else {
                Token field = expect_lower("field or accessor name");
                base = Term::access(Term::Kind::Field, std::move(base), field.text);
            }
        }
        return base;
    }

    // ----- fix expressions -----------------------------------------

    FixExpr parse_fix(const Pattern& pat, const std::set<std::string>& declared) {
        if (at(Tok::LowerName) && !is_spec_keyword(peek().text)) {
            Token binder = take();
            if (binder.text != pat.subject.name)
                fail_at(binder, "an update is rooted at the subject binder '" +
                                    pat.subject.name + "'");
            Update upd;
            upd.binder = binder.text;
            expect(Tok::LBracket, "'['");
            skip_newlines();
            std::set<std::string> targets;
            while (true) {
                Token target = expect_lower("target metavariable");
                bool is_metavar = false;
                for (const auto& mv : pat.metavars) is_metavar |= (mv.name == target.text);
                if (!is_metavar)
                    fail_at(target, "update target '" + target.text +
                                        "' is not a declared metavariable");
                if (!targets.insert(target.text).second)
                    fail_at(target, "duplicate update target '" + target.text + "'");
                expect(Tok::Assign, "'<-'");
                Subst s;
                s.target = target.text;
                s.expr = parse_node_expr(declared);
                upd.substs.push_back(std::move(s));
                skip_newlines();
                if (at(Tok::Comma)) {
                    take();
                    skip_newlines();
                    continue;
                }
                break;
            }
            expect(Tok::RBracket, "']'");
            return upd;
        }
        NodeExpr root = parse_node_expr(declared);
        if (!std::holds_alternative<Instantiation>(root.node))
            fail("a fix is an update or an instantiation");
        return std::get<Instantiation>(std::move(root.node));
    }

    NodeExpr parse_node_expr(const std::set<std::string>& declared) {
        if (at(Tok::Int)) {
            Instantiation inst;
            inst.construct = "INT_LIT";
            inst.atom_value = take().int_value;
            return {std::move(inst)};
        }
        if (at_word("true") || at_word("false") || at_word("null")) {
            std::string word = take().text;
            Instantiation inst;
            inst.construct = word == "true" ? "TRUE_LIT"
                             : word == "false" ? "FALSE_LIT"
                                               : "NULL_LIT";
            inst.atom_value = word;
            return {std::move(inst)};
        }
        if (at_word("old")) {
            take();
            Token var = expect_lower("metavariable");
            if (!declared.count(var.text))
                fail_at(var, "undeclared name '" + var.text + "'");
            if (at(Tok::Dot)) fail("'old' applies to a bound metavariable");
            return {VarRef{var.text, true}};
        }
        if (at(Tok::LowerName)) {
            Token var = expect_lower("metavariable");
            if (!declared.count(var.text))
                fail_at(var, "undeclared name '" + var.text + "'");
            if (!at(Tok::Dot)) return {VarRef{var.text, false}};
            FieldPath path;
            path.var = var.text;
            while (at(Tok::Dot)) {
                take();
                path.path.push_back(expect_lower("field name").text);
            }
            return {std::move(path)};
        }
        Token name = expect_upper("construct name");
        Instantiation inst;
        inst.construct = name.text;
        if (at(Tok::Int)) {
            inst.atom_value = take().int_value;
        } else if (at(Tok::String)) {
            inst.atom_value = take().string_value;
        } else if (at(Tok::LBracket)) {
            take();
            skip_newlines();
            std::set<std::string> seen;
            while (!at(Tok::RBracket)) {
                Token field = expect_lower("field name");
                if (!seen.insert(field.text).second)
                    fail_at(field, "field '" + field.text + "' assigned twice");
                expect(Tok::Assign, "'<-'");
                FieldInit init;
                init.field = field.text;
                if (at(Tok::LBracket)) {
                    take();
                    skip_newlines();
                    init.is_list = true;
                    while (!at(Tok::RBracket)) {
                        init.values.push_back(parse_node_expr(declared));
                        skip_newlines();
                        if (at(Tok::Comma)) {
                            take();
                            skip_newlines();
                        }
                    }
                    expect(Tok::RBracket, "']'");
                } else {
                    init.values.push_back(parse_node_expr(declared));
                }
                inst.fields.push_back(std::move(init));
                skip_newlines();
                if (at(Tok::Comma)) {
                    take();
                    skip_newlines();
                }
            }
            expect(Tok::RBracket, "']'");
        } else if (inst.construct == "TRUE_LIT" || inst.construct == "FALSE_LIT" ||
                   inst.construct == "NULL_LIT") {
            // bare canonical-value atoms
            inst.atom_value = inst.construct == "TRUE_LIT" ? "true"
                              : inst.construct == "FALSE_LIT" ? "false"
                                                              : "null";
        }
        return {std::move(inst)};
    }
};

} // namespace

SpecUnit parse_spec(const std::string& text, const std::string& unit_name) {
    return Parser(text, unit_name).run();
}

} // namespace bugfix
