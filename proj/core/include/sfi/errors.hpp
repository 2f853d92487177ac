#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfi {

// Input outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    DomainError(std::string field, const std::string& what)
        : std::domain_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Result would not be representable (overflow scale).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

// A numerical procedure did not reach its accuracy target. The best
// available estimates are carried along so callers can report them.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, std::vector<double> estimates)
        : std::runtime_error(what), estimates_(std::move(estimates)) {}

    const std::vector<double>& estimates() const noexcept { return estimates_; }

private:
    std::vector<double> estimates_;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A relation that must hold by construction was found broken at runtime.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sfi
