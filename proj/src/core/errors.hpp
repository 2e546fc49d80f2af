#ifndef BUGFIX_CORE_ERRORS_HPP
#define BUGFIX_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bugfix {

// Broad failure classes; the C boundary maps these to status codes.
enum class ErrorKind {
    Syntax,         // DSL, MiniLang, or JSON input rejected
    Validation,     // registry or tree invariant violated
    NotFound,       // unknown pattern, language, construct, or file
    Apply,          // fix application failed
    NotInvertible,  // reverse_pattern rejected the pattern
    Io,
    Usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failure with a 1-based source position and the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, std::string token, const std::string& message)
        : Error(ErrorKind::Syntax,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                    (token.empty() ? "" : " (at '" + token + "')")),
          line_(line), column_(column), token_(std::move(token)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }

private:
    int line_;
    int column_;
    std::string token_;
};

class NotInvertibleError : public Error {
public:
    explicit NotInvertibleError(std::string reason)
        : Error(ErrorKind::NotInvertible, "pattern is not invertible: " + reason),
          reason_(std::move(reason)) {}

    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
};

} // namespace bugfix

#endif
