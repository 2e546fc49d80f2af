#ifndef BUGFIX_CORE_SPEC_LEXER_HPP
#define BUGFIX_CORE_SPEC_LEXER_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bugfix {

enum class Tok {
    End,
    Newline,
    LowerName,
    UpperName,
    MixedName,  // only valid as a language tag
    Int,
    String,
    Colon,
    Semicolon,
    Comma,
    Dot,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Pipe,
    Eq,      // =
    Ne,      // /= or U+2260
    Lt,
    Le,      // <= or U+2264
    Gt,
    Ge,      // >= or U+2265
    Assign,  // <- or U+2190
    Arrow,   // -> or U+2192
};

struct Token {
    Tok kind = Tok::End;
    std::string text;            // names, raw operator spelling
    std::string string_value;    // decoded String payload
    std::int64_t int_value = 0;  // Int payload
    int line = 1;
    int column = 1;
};

bool is_spec_keyword(const std::string& name);

// Tokenizes a whole .bugfix input.  Unicode operator aliases are
// folded to their ASCII kinds.  Throws SyntaxError on bad input.
std::vector<Token> lex_spec(const std::string& text);

} // namespace bugfix

#endif
