// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pchaos {

/// Negative times, nonpositive steps and other out-of-domain arguments.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Kernel with L1 norm >= 1 used where a stable Hawkes process is required.
class StabilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Measure-zero inputs: two atoms sharing a time with different marks.
class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Violated construction invariant (mu <= 0, M < mu, window too small, ...).
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class AtomBudgetExceeded : public std::runtime_error {
public:
    AtomBudgetExceeded(std::size_t atoms, std::size_t budget)
        : std::runtime_error("atom count " + std::to_string(atoms) +
                             " exceeds enumeration budget " + std::to_string(budget)),
          atoms_(atoms),
          budget_(budget) {}

    std::size_t atoms() const noexcept { return atoms_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t atoms_;
    std::size_t budget_;
};

}  // namespace pchaos
