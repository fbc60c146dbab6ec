#pragma once

#include <memory>
#include <span>
#include <vector>

namespace oufpt {

// Shape-preserving (monotone) piecewise cubic Hermite interpolant through
// strictly increasing knots. Falls back to piecewise linear for fewer than
// four knots.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return y_; }

private:
    struct Impl;
    std::vector<double> x_;
    std::vector<double> y_;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace oufpt
