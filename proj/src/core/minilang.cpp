#include "minilang.hpp"

#include <cctype>
#include <vector>

#include "errors.hpp"

namespace bugfix {

namespace {

enum class MTok {
    End, Ident, Int,
    KwIf, KwElse, KwReturn, KwTrue, KwFalse, KwNull,
    Assign, Eq, Ne, Lt, Le, Gt, Ge,
    Plus, Minus, Star,
    LParen, RParen, LBrace, RBrace,
    Comma, Semi, Dot,
};

struct MToken {
    MTok kind = MTok::End;
    std::string text;
    std::int64_t int_value = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

std::vector<MToken> lex(const std::string& src) {
    std::vector<MToken> out;
    std::size_t i = 0;
    int line = 1, column = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        MToken tok;
        tok.begin = i;
        tok.line = line;
        tok.column = column;
        auto emit = [&](MTok kind, std::size_t len) {
            tok.kind = kind;
            tok.text = src.substr(tok.begin, len);
            advance(len);
            tok.end = i;
            out.push_back(tok);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            MTok kind = MTok::Ident;
            if (word == "if") kind = MTok::KwIf;
            else if (word == "else") kind = MTok::KwElse;
            else if (word == "return") kind = MTok::KwReturn;
            else if (word == "true") kind = MTok::KwTrue;
            else if (word == "false") kind = MTok::KwFalse;
            else if (word == "null") kind = MTok::KwNull;
            emit(kind, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            tok.kind = MTok::Int;
            tok.text = src.substr(i, j - i);
            try {
                tok.int_value = std::stoll(tok.text);
            } catch (const std::out_of_range&) {
                throw SyntaxError(line, column, tok.text, "integer literal out of range");
            }
            advance(j - i);
            tok.end = i;
            out.push_back(tok);
            continue;
        }
        switch (c) {
            case '=':
                if (i + 1 < src.size() && src[i + 1] == '=') emit(MTok::Eq, 2);
                else emit(MTok::Assign, 1);
                continue;
            case '!':
                if (i + 1 < src.size() && src[i + 1] == '=') { emit(MTok::Ne, 2); continue; }
                throw SyntaxError(line, column, "!", "unexpected character");
            case '<':
                if (i + 1 < src.size() && src[i + 1] == '=') emit(MTok::Le, 2);
                else emit(MTok::Lt, 1);
                continue;
            case '>':
                if (i + 1 < src.size() && src[i + 1] == '=') emit(MTok::Ge, 2);
                else emit(MTok::Gt, 1);
                continue;
            case '+': emit(MTok::Plus, 1); continue;
            case '-': emit(MTok::Minus, 1); continue;
            case '*': emit(MTok::Star, 1); continue;
            case '(': emit(MTok::LParen, 1); continue;
            case ')': emit(MTok::RParen, 1); continue;
            case '{': emit(MTok::LBrace, 1); continue;
            case '}': emit(MTok::RBrace, 1); continue;
            case ',': emit(MTok::Comma, 1); continue;
            case ';': emit(MTok::Semi, 1); continue;
            case '.': emit(MTok::Dot, 1); continue;
            default:
                throw SyntaxError(line, column, std::string(1, c), "unexpected character");
        }
    }
    MToken end;
    end.kind = MTok::End;
    end.begin = end.end = src.size();
    end.line = line;
    end.column = column;
    out.push_back(end);
    return out;
}

// A parsed expression: the node's own span excludes grouping
// parentheses, while `extent` covers everything consumed for it, so
// enclosing nodes span their full source text.
struct Parsed {
    NodePtr node;
    std::size_t extent_begin = 0;
    std::size_t extent_end = 0;
};

class Parser {
public:
    Parser(const Registry& registry, const std::string& source)
        : reg_(registry), tokens_(lex(source)) {}

    Tree run() {
        NodePtr program = make_node(reg_, "PROGRAM");
        FieldSlot* body = program->slot("body");
        std::size_t begin = peek().begin;
        std::size_t end = begin;
        while (!at(MTok::End)) {
            NodePtr stmt = parse_statement();
            end = stmt->span->end;
            body->list.push_back(std::move(stmt));
        }
        program->span = body->list.empty() ? Span{0, 0}
                                           : Span{static_cast<std::int64_t>(begin),
                                                  static_cast<std::int64_t>(end)};
        Tree tree;
        tree.root = std::move(program);
        tree.registry_fingerprint = reg_.fingerprint();
        renumber_preorder(*tree.root);
        set_parents(*tree.root);
        return tree;
    }

private:
    const MToken& peek(std::size_t ahead = 0) const {
        std::size_t at = pos_ + ahead;
        return at < tokens_.size() ? tokens_[at] : tokens_.back();
    }
    bool at(MTok kind) const { return peek().kind == kind; }
    MToken take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        const MToken& tok = peek();
        throw SyntaxError(tok.line, tok.column, tok.kind == MTok::End ? "end of input" : tok.text,
                          message);
    }

    MToken expect(MTok kind, const char* what) {
        if (!at(kind)) fail(std::string("expected ") + what);
        return take();
    }

    static Span to_span(std::size_t begin, std::size_t end) {
        return Span{static_cast<std::int64_t>(begin), static_cast<std::int64_t>(end)};
    }

    NodePtr atom(const std::string& construct, Value value, const MToken& tok) {
        NodePtr node = make_atom(reg_, construct, std::move(value));
        node->span = to_span(tok.begin, tok.end);
        return node;
    }

    NodePtr parse_statement() {
        if (at(MTok::KwIf)) return parse_if();
        if (at(MTok::KwReturn)) {
            MToken kw = take();
            Parsed expr = parse_expr();
            MToken semi = expect(MTok::Semi, "';'");
            NodePtr node = make_node(reg_, "RETURN");
            node->slot("expr")->single = std::move(expr.node);
            node->span = to_span(kw.begin, semi.end);
            return node;
        }
        if (at(MTok::Ident) && peek(1).kind == MTok::Assign) {
            MToken name = take();
            take();  // '='
            Parsed rhs = parse_expr();
            MToken semi = expect(MTok::Semi, "';'");
            NodePtr node = make_node(reg_, "ASSIGN");
            node->slot("lhs")->single = atom("IDENTIFIER", name.text, name);
            node->slot("rhs")->single = std::move(rhs.node);
            node->span = to_span(name.begin, semi.end);
            return node;
        }
        // Anything else must be a call expression statement.
        const MToken& start = peek();
        Parsed expr = parse_expr();
        if (expr.node->construct() != "CALL" && expr.node->construct() != "QUALIFIED_CALL") {
            throw SyntaxError(start.line, start.column, start.text,
                              "expression statement must be a call");
        }
        MToken semi = expect(MTok::Semi, "';'");
        NodePtr node = make_node(reg_, "CALL_STMT");
        node->slot("expr")->single = std::move(expr.node);
        node->span = to_span(expr.extent_begin, semi.end);
        return node;
    }

    NodePtr parse_if() {
        MToken kw = take();
        expect(MTok::LParen, "'('");
        Parsed cond = parse_expr();
        expect(MTok::RParen, "')'");
        NodePtr node = make_node(reg_, "IF");
        node->slot("cond")->single = std::move(cond.node);
        std::size_t end = parse_block(node->slot("then")->list);
        if (at(MTok::KwElse)) {
            take();
            end = parse_block(node->slot("else")->list);
        }
        node->span = to_span(kw.begin, end);
        return node;
    }

    // Returns the byte offset just past the closing brace.
    std::size_t parse_block(std::vector<NodePtr>& into) {
        expect(MTok::LBrace, "'{'");
        while (!at(MTok::RBrace)) {
            if (at(MTok::End)) fail("expected '}'");
            into.push_back(parse_statement());
        }
        return take().end;
    }

    Parsed parse_expr() { return parse_comparison(); }

    static const char* comparison_construct(MTok kind) {
        switch (kind) {
            case MTok::Eq: return "EQ_BIN_OP";
            case MTok::Ne: return "NEQ_BIN_OP";
            case MTok::Lt: return "LT_BIN_OP";
            case MTok::Le: return "LE_BIN_OP";
            case MTok::Gt: return "GT_BIN_OP";
            case MTok::Ge: return "GE_BIN_OP";
            default: return nullptr;
        }
    }

    Parsed parse_comparison() {
        Parsed lhs = parse_additive();
        const char* construct = comparison_construct(peek().kind);
        if (!construct) return lhs;
        take();
        Parsed rhs = parse_additive();
        if (comparison_construct(peek().kind)) fail("comparisons do not chain");
        return binary(construct, std::move(lhs), std::move(rhs));
    }

    Parsed parse_additive() {
        Parsed lhs = parse_multiplicative();
        while (at(MTok::Plus) || at(MTok::Minus)) {
            bool plus = take().kind == MTok::Plus;
            Parsed rhs = parse_multiplicative();
            lhs = binary(plus ? "SUM" : "DIFFERENCE", std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Parsed parse_multiplicative() {
        Parsed lhs = parse_postfix();
        while (at(MTok::Star)) {
            take();
            Parsed rhs = parse_postfix();
            lhs = binary("PRODUCT", std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Parsed binary(const std::string& construct, Parsed lhs, Parsed rhs) {
        NodePtr node = make_node(reg_, construct);
        node->slot("first")->single = std::move(lhs.node);
        node->slot("second")->single = std::move(rhs.node);
        node->span = to_span(lhs.extent_begin, rhs.extent_end);
        return {std::move(node), lhs.extent_begin, rhs.extent_end};
    }

    Parsed parse_postfix() {
        Parsed base = parse_primary();
        while (at(MTok::Dot)) {
            take();
            MToken name = expect(MTok::Ident, "method name");
            expect(MTok::LParen, "'('");
            std::vector<NodePtr> args = parse_args();
            MToken rparen = expect(MTok::RParen, "')'");
            NodePtr node = make_node(reg_, "QUALIFIED_CALL");
            node->slot("recv")->single = std::move(base.node);
            node->slot("r")->single = atom("ROUTINE", name.text, name);
            node->slot("args")->list = std::move(args);
            node->span = to_span(base.extent_begin, rparen.end);
            base = {std::move(node), base.extent_begin, rparen.end};
        }
        return base;
    }

    std::vector<NodePtr> parse_args() {
        std::vector<NodePtr> out;
        if (at(MTok::RParen)) return out;
        while (true) {
            out.push_back(parse_expr().node);
            if (!at(MTok::Comma)) return out;
            take();
        }
    }

    Parsed parse_primary() {
        if (at(MTok::LParen)) {
            MToken lparen = take();
            Parsed inner = parse_expr();
            MToken rparen = expect(MTok::RParen, "')'");
            // Grouping parentheses widen the extent, not the span.
            return {std::move(inner.node), lparen.begin, rparen.end};
        }
        if (at(MTok::Int)) {
            MToken tok = take();
            return {atom("INT_LIT", tok.int_value, tok), tok.begin, tok.end};
        }
        if (at(MTok::KwTrue)) {
            MToken tok = take();
            return {atom("TRUE_LIT", std::string("true"), tok), tok.begin, tok.end};
        }
        if (at(MTok::KwFalse)) {
            MToken tok = take();
            return {atom("FALSE_LIT", std::string("false"), tok), tok.begin, tok.end};
        }
        if (at(MTok::KwNull)) {
            MToken tok = take();
            return {atom("NULL_LIT", std::string("null"), tok), tok.begin, tok.end};
        }
        if (at(MTok::Ident)) {
            MToken name = take();
            if (at(MTok::LParen)) {
                take();
                std::vector<NodePtr> args = parse_args();
                MToken rparen = expect(MTok::RParen, "')'");
                NodePtr node = make_node(reg_, "CALL");
                node->slot("args")->list = std::move(args);
                node->slot("r")->single = atom("ROUTINE", name.text, name);
                node->span = to_span(name.begin, rparen.end);
                return {std::move(node), name.begin, rparen.end};
            }
            return {atom("IDENTIFIER", name.text, name), name.begin, name.end};
        }
        fail("expected expression");
    }

    const Registry& reg_;
    std::vector<MToken> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

Tree parse_minilang(const Registry& registry, const std::string& source) {
    return Parser(registry, source).run();
}

} // namespace bugfix
