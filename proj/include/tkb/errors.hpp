#ifndef TKB_ERRORS_HPP
#define TKB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tkb {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error in DL text or Turtle input. Positions are 1-based.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what_arg)
        : Error(format(line, column, what_arg)), line(line), column(column) {}

    std::size_t line = 0;
    std::size_t column = 0;

    static std::string format(std::size_t line, std::size_t column, const std::string& msg) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }
};

// A construct that is representable but has no defined behaviour in the
// requested operation (e.g. the universal role inside the tableau).
struct UnsupportedConstructError : Error {
    using Error::Error;
};

// Raised in strict safety mode when a rule variable has no non-DL guard.
struct UnsafeRuleError : Error {
    UnsafeRuleError(std::string variable, const std::string& what_arg)
        : Error(what_arg), variable(std::move(variable)) {}
    std::string variable;
};

// The tableau exceeded its node cap; the answer is inconclusive, not a verdict.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(std::size_t limit)
        : Error("node cap of " + std::to_string(limit) + " nodes exceeded"), limit(limit) {}
    std::size_t limit = 0;
};

// The model-finder ran out of search budget before reaching a decision.
struct BudgetExceededError : Error {
    BudgetExceededError(std::size_t domain_size, const std::string& what_arg)
        : Error(what_arg), domain_size(domain_size) {}
    std::size_t domain_size = 0;
};

// Entailment-mode materialization over an inconsistent knowledge base.
struct InconsistentKbError : Error {
    using Error::Error;
};

// The RBox admits no regular order (offending axioms listed in the message).
struct NonRegularRboxError : Error {
    using Error::Error;
};

} // namespace tkb

#endif // TKB_ERRORS_HPP
