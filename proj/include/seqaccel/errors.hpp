#pragma once

#include <stdexcept>
#include <string>

namespace seqaccel {

// Exit-status buckets. Library code throws; the CLI maps what it catches.
enum class ErrorCode {
    usage = 2,
    io = 3,
    parse = 4,
    domain = 5,
    mismatch = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(ErrorCode::usage, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorCode::io, msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorCode::parse, msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(ErrorCode::domain, msg) {}
};

// Domain-bucket refinements thrown by the numeric modules.

struct BreakdownError : DomainError {
    explicit BreakdownError(const std::string& msg) : DomainError(msg) {}
};

struct IndexError : DomainError {
    explicit IndexError(const std::string& msg) : DomainError(msg) {}
};

struct InvalidSpecError : DomainError {
    explicit InvalidSpecError(const std::string& msg) : DomainError(msg) {}
};

struct SingularSystemError : DomainError {
    explicit SingularSystemError(const std::string& msg) : DomainError(msg) {}
};

struct InsufficientDataError : DomainError {
    explicit InsufficientDataError(const std::string& msg) : DomainError(msg) {}
};

struct OutOfRangeError : DomainError {
    explicit OutOfRangeError(const std::string& msg) : DomainError(msg) {}
};

} // namespace seqaccel
