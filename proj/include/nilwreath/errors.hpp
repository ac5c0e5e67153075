#pragma once

#include <stdexcept>
#include <string>

namespace nilwreath {

// Error taxonomy mirrors the CLI exit codes:
//   SchemaError -> 1 (malformed input), DomainError -> 2 (precondition or
//   mathematical domain violation), BudgetError -> 3 (cap or budget hit).
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Cooperative cancellation, checked between iterations of long searches.
class CancelledError : public std::runtime_error {
public:
    CancelledError() : std::runtime_error("operation cancelled") {}
};

// Internal invariant failures; seeing one is a bug, not a usage error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nilwreath
