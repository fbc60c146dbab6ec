#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oufpt {

// Input outside an operation's mathematical domain (t <= 0, x0 >= S, NaN, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation at a pole of the underlying special function.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Evaluation outside a tabulated or configured range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A numerical procedure ran but its output violates a contract
// (negative density, quadrature non-convergence, ill-conditioning).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, std::size_t node = npos)
        : std::runtime_error(what), node_(node) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Index of the offending grid node, or npos when not node-specific.
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class IllConditionedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace oufpt
