#pragma once

#include <stdexcept>
#include <string>

namespace mst {

// Exit-code convention: 2 config error, 3 numerical failure, 4 verification
// failure.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string msg) : Error(std::move(msg), 2) {}
};

class NumericError : public Error {
public:
    explicit NumericError(std::string msg) : Error(std::move(msg), 3) {}
};

class VerifyError : public Error {
public:
    explicit VerifyError(std::string msg) : Error(std::move(msg), 4) {}
};

struct InvalidBranchingFactor : ConfigError {
    explicit InvalidBranchingFactor(int m)
        : ConfigError("branching factor must be >= 2, got " + std::to_string(m)) {}
};

struct NoSecondRoot : ConfigError {
    NoSecondRoot() : ConfigError("m=2 has the single root 1; no second root") {}
};

struct NonConvergence : NumericError {
    explicit NonConvergence(std::string msg) : NumericError(std::move(msg)) {}
};

struct DivergentMoment : ConfigError {
    DivergentMoment() : ConfigError("spacing moment diverges for Re s <= -1") {}
};

struct NonContracting : ConfigError {
    explicit NonContracting(double factor)
        : ConfigError("m E V^(2 sigma) = " + std::to_string(factor) +
                      " >= 1: no L2 limit") {}
};

struct WorkBudgetExceeded : ConfigError {
    explicit WorkBudgetExceeded(std::string msg) : ConfigError(std::move(msg)) {}
};

struct DuplicateKey : ConfigError {
    DuplicateKey() : ConfigError("key already present in tree") {}
};

struct DegenerateBounds : ConfigError {
    DegenerateBounds() : ConfigError("histogram rectangle has zero area") {}
};

struct InsufficientTail : ConfigError {
    explicit InsufficientTail(std::string msg) : ConfigError(std::move(msg)) {}
};

struct DomainError : ConfigError {
    explicit DomainError(std::string msg) : ConfigError(std::move(msg)) {}
};

struct NotAnEigenvalue : ConfigError {
    explicit NotAnEigenvalue(double residual)
        : ConfigError("closure residual " + std::to_string(residual) +
                      ": lambda is not a characteristic root") {}
};

struct Unreachable : NumericError {
    explicit Unreachable(std::string msg) : NumericError(std::move(msg)) {}
};

}  // namespace mst
