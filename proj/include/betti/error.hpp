#pragma once

#include <stdexcept>
#include <string>

namespace betti {

/// Malformed input: bad simplex, vertex out of range, unparsable file.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A size guard or sample budget was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative numerics failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computed sample count exceeds the configured budget.
/// Carries the count that was requested so callers can report it.
class SampleBudgetExceeded : public ResourceError {
public:
    SampleBudgetExceeded(std::string what_phase, double requested, double budget)
        : ResourceError(what_phase + " sample count " + std::to_string(requested) +
                        " exceeds budget " + std::to_string(budget)),
          phase_(std::move(what_phase)), requested_(requested), budget_(budget) {}

    const std::string& phase() const noexcept { return phase_; }
    double requested() const noexcept { return requested_; }
    double budget() const noexcept { return budget_; }

private:
    std::string phase_;
    double requested_;
    double budget_;
};

}  // namespace betti
