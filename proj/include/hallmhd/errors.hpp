#pragma once

#include <stdexcept>
#include <string>

namespace hallmhd {

// Failure taxonomy shared by the library and the CLI exit codes.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Data violates a structural invariant (Hermitian symmetry, grid mismatch, ...).
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside an operation's stated domain (negative time, j out of band range, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// CLI exit codes. Nonconvergence is a reported outcome, not an exception.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_integrity = 3,
    exit_nonconvergence = 4,
    exit_io = 5,
};

}  // namespace hallmhd
