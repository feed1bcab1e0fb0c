#pragma once

#include <stdexcept>
#include <string>

namespace qap {

enum class ErrorCode {
    NegativeEigenvalue,
    NotNormalized,
    OrderViolation,
    NotBoundary,
    OutOfRange,
    RootSelectionFailure,
    UnknownFamily,
    InvalidDirection,
    ParseError,
    InternalInconsistency,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse failures carry a 1-based position into the offending input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(ErrorCode::ParseError,
                what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace qap
