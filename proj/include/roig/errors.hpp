#pragma once

#include <stdexcept>
#include <string>

namespace roig {

// Malformed instance documents or bad CLI-level inputs.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated preconditions of an operation (unknown point, empty sample, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A learner flagged as local touched the perturbation map outside its view.
struct LocalityViolation : std::runtime_error {
    explicit LocalityViolation(const std::string& what) : std::runtime_error(what) {}
};

// Explicit resource guard: vertex caps, enumeration caps, search budgets.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A weak learner failed to meet its robust-risk contract on some round.
struct WeakLearnerFailure : std::runtime_error {
    WeakLearnerFailure(const std::string& what, int round)
        : std::runtime_error(what), round(round) {}
    int round;
};

}  // namespace roig
