#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace graphdist {

// Malformed graph or matrix documents. Carries the 1-based line number when
// the input is line oriented (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// An exact algorithm refused an instance that is larger than its budget.
// When a feasible solution was found before giving up, its value is attached.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what, std::optional<double> best = std::nullopt)
        : std::runtime_error(what), best_(best) {}

    std::optional<double> best_upper_bound() const { return best_; }

private:
    std::optional<double> best_;
};

// Alignment metrics compare graphs of equal order only.
class OrderMismatch : public std::invalid_argument {
public:
    OrderMismatch(std::size_t m, std::size_t n)
        : std::invalid_argument("graphs have different orders (" + std::to_string(m) + " vs " +
                                std::to_string(n) +
                                "); use the padded metric or a blow-up metric instead") {}
};

// Iterative method stopped at its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_(best_estimate) {}

    double best_estimate() const { return best_; }

private:
    double best_;
};

// Raised when an internally constructed certificate fails its own exact check.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace graphdist
