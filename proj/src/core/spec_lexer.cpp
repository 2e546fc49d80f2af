#include "spec_lexer.hpp"

#include <array>
#include <cctype>

#include "errors.hpp"

namespace bugfix {

namespace {

const std::array<const char*, 21> kKeywords = {
    "construct", "feature", "end", "syntax", "for", "pattern", "with", "where",
    "fix", "old", "inherit", "atom", "category", "seed", "prec", "nonassoc",
    "in", "is", "not", "descendants",
    // accessor names are reserved so term parsing stays unambiguous
    "value",
};

// index/count/parent are likewise reserved but also appear in guards,
// so they are listed separately where needed.
const std::array<const char*, 3> kAccessorKeywords = {"index", "count", "parent"};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool all_upper(const std::string& s) {
    for (char c : s)
        if (std::islower(static_cast<unsigned char>(c))) return false;
    return true;
}

bool all_lower(const std::string& s) {
    for (char c : s)
        if (std::isupper(static_cast<unsigned char>(c))) return false;
    return true;
}

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    bool done() const { return pos >= text.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < text.size() ? text[pos + ahead] : '\0';
    }
    // Byte-wise advance; the column counts code points.
    void advance() {
        if (done()) return;
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++column;
        }
    }
    bool match_bytes(const char* bytes) {
        std::size_t n = 0;
        while (bytes[n] != '\0') {
            if (peek(n) != bytes[n]) return false;
            ++n;
        }
        for (std::size_t i = 0; i < n; ++i) advance();
        return true;
    }
};

[[noreturn]] void fail(const Cursor& c, const std::string& message) {
    std::string tok = c.done() ? "" : std::string(1, c.text[c.pos]);
    throw SyntaxError(c.line, c.column, tok, message);
}

} // namespace

bool is_spec_keyword(const std::string& name) {
    for (const char* k : kKeywords)
        if (name == k) return true;
    for (const char* k : kAccessorKeywords)
        if (name == k) return true;
    return name == "true" || name == "false" || name == "null";
}

std::vector<Token> lex_spec(const std::string& text) {
    std::vector<Token> out;
    Cursor c{text};

    auto push = [&](Tok kind, std::string tok_text, int line, int column) {
        Token t;
        t.kind = kind;
        t.text = std::move(tok_text);
        t.line = line;
        t.column = column;
        out.push_back(std::move(t));
    };

    while (!c.done()) {
        int line = c.line, column = c.column;
        char ch = c.peek();

        if (ch == ' ' || ch == '\t' || ch == '\r') {
            c.advance();
            continue;
        }
        if (ch == '\n') {
            c.advance();
            push(Tok::Newline, "\\n", line, column);
            continue;
        }
        if (ch == '-' && c.peek(1) == '-') {
            while (!c.done() && c.peek() != '\n') c.advance();
            continue;
        }

        // Unicode operator aliases.
        if (c.match_bytes("\xE2\x88\x88")) { push(Tok::LowerName, "in", line, column); continue; } // U+2208
        if (c.match_bytes("\xE2\x89\xA0")) { push(Tok::Ne, "/=", line, column); continue; }        // U+2260
        if (c.match_bytes("\xE2\x86\x90")) { push(Tok::Assign, "<-", line, column); continue; }    // U+2190
        if (c.match_bytes("\xE2\x86\x92")) { push(Tok::Arrow, "->", line, column); continue; }     // U+2192
        if (c.match_bytes("\xE2\x89\xA4")) { push(Tok::Le, "<=", line, column); continue; }        // U+2264
        if (c.match_bytes("\xE2\x89\xA5")) { push(Tok::Ge, ">=", line, column); continue; }        // U+2265

        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '-' && std::isdigit(static_cast<unsigned char>(c.peek(1))))) {
            std::string digits;
            if (ch == '-') {
                digits += '-';
                c.advance();
            }
            while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
                digits += c.peek();
                c.advance();
            }
            Token t;
            t.kind = Tok::Int;
            t.text = digits;
            try {
                t.int_value = std::stoll(digits);
            } catch (const std::out_of_range&) {
                throw SyntaxError(line, column, digits, "integer literal out of range");
            }
            t.line = line;
            t.column = column;
            out.push_back(std::move(t));
            continue;
        }

        if (is_name_start(ch)) {
            std::string name;
            while (is_name_char(c.peek())) {
                name += c.peek();
                c.advance();
            }
            Tok kind = Tok::MixedName;
            if (all_upper(name) && std::isupper(static_cast<unsigned char>(name[0])))
                kind = Tok::UpperName;
            else if (all_lower(name))
                kind = Tok::LowerName;
            push(kind, std::move(name), line, column);
            continue;
        }

        if (ch == '"') {
            c.advance();
            std::string value;
            while (true) {
                if (c.done() || c.peek() == '\n')
                    throw SyntaxError(line, column, "\"", "unterminated string literal");
                char s = c.peek();
                c.advance();
                if (s == '"') break;
                if (s == '\\') {
                    char esc = c.peek();
                    c.advance();
                    switch (esc) {
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case '"': value += '"'; break;
                        case '\\': value += '\\'; break;
                        default:
                            throw SyntaxError(c.line, c.column - 1, std::string(1, esc),
                                              "unknown escape sequence");
                    }
                } else {
                    value += s;
                }
            }
            Token t;
            t.kind = Tok::String;
            t.text = value;
            t.string_value = value;
            t.line = line;
            t.column = column;
            out.push_back(std::move(t));
            continue;
        }

        switch (ch) {
            case ':': c.advance(); push(Tok::Colon, ":", line, column); continue;
            case ';': c.advance(); push(Tok::Semicolon, ";", line, column); continue;
            case ',': c.advance(); push(Tok::Comma, ",", line, column); continue;
            case '.': c.advance(); push(Tok::Dot, ".", line, column); continue;
            case '*': c.advance(); push(Tok::Star, "*", line, column); continue;
            case '(': c.advance(); push(Tok::LParen, "(", line, column); continue;
            case ')': c.advance(); push(Tok::RParen, ")", line, column); continue;
            case '[': c.advance(); push(Tok::LBracket, "[", line, column); continue;
            case ']': c.advance(); push(Tok::RBracket, "]", line, column); continue;
            case '{': c.advance(); push(Tok::LBrace, "{", line, column); continue;
            case '}': c.advance(); push(Tok::RBrace, "}", line, column); continue;
            case '|': c.advance(); push(Tok::Pipe, "|", line, column); continue;
            case '=': c.advance(); push(Tok::Eq, "=", line, column); continue;
            case '/':
                if (c.peek(1) == '=') {
                    c.advance();
                    c.advance();
                    push(Tok::Ne, "/=", line, column);
                    continue;
                }
                fail(c, "unexpected character");
            case '<':
                c.advance();
                if (c.peek() == '-') {
                    c.advance();
                    push(Tok::Assign, "<-", line, column);
                } else if (c.peek() == '=') {
                    c.advance();
                    push(Tok::Le, "<=", line, column);
                } else {
                    push(Tok::Lt, "<", line, column);
                }
                continue;
            case '>':
                c.advance();
                if (c.peek() == '=') {
                    c.advance();
                    push(Tok::Ge, ">=", line, column);
                } else {
                    push(Tok::Gt, ">", line, column);
                }
                continue;
            case '-':
                c.advance();
                if (c.peek() == '>') {
                    c.advance();
                    push(Tok::Arrow, "->", line, column);
                    continue;
                }
                throw SyntaxError(line, column, "-", "unexpected character");
            default:
                fail(c, "unexpected character");
        }
    }

    Token end;
    end.kind = Tok::End;
    end.line = c.line;
    end.column = c.column;
    out.push_back(std::move(end));
    return out;
}

} // namespace bugfix
