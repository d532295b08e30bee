#pragma once

#include <stdexcept>
#include <string>

namespace xab {

// Invalid parameters or unknown names supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation (arm not in [0,1], arm index out of range, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A fixed-horizon learner was asked for more rounds than its horizon.
class SequenceExhausted : public std::out_of_range {
public:
    explicit SequenceExhausted(const std::string& what) : std::out_of_range(what) {}
};

// A theorem-level precondition does not hold (e.g. B < sqrt(T) for MeDZO).
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace xab
