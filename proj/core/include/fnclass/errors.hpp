#pragma once
// Error hierarchy shared by the library and the command-line tool.
//
// Every error carries a category that the CLI maps to an exit code:
//   Usage   -> 1  (bad flags, invalid model names, bad configs)
//   Data    -> 2  (unreadable/malformed input, grid or range mismatches)
//   Numeric -> 3  (domain violations, too few observations to compute)

#include <stdexcept>
#include <string>

namespace fnclass {

enum class ErrorKind { Usage, Data, Numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

// Invalid (family, variant) or other malformed generative definitions.
struct SpecError : Error {
    explicit SpecError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

// Malformed values in otherwise well-formed input (non-finite numbers,
// non-monotone time points).
struct DataError : Error {
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct ClassError : Error {
    explicit ClassError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = -1)
        : Error(ErrorKind::Data, line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

// A random split left a cohort without enough members of one class.
class ResampleNeededError : public Error {
public:
    ResampleNeededError(std::string cohort, int label, const std::string& what)
        : Error(ErrorKind::Numeric, what), cohort_(std::move(cohort)), label_(label) {}

    const std::string& cohort() const noexcept { return cohort_; }
    int label() const noexcept { return label_; }

private:
    std::string cohort_;
    int label_;
};

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return 1;
        case ErrorKind::Data: return 2;
        case ErrorKind::Numeric: return 3;
    }
    return 1;
}

}  // namespace fnclass
