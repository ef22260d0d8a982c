#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// Argument outside the mathematical domain of an operation (pole, r = 0,
/// inadmissible (N, s) pair, wrong Leibniz variant, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its tolerance. Carries the error
/// estimate that was actually achieved.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_error)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// Input data cannot support the requested estimate (too few samples,
/// constant data, missing decay certificate).
class DataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fraclab
