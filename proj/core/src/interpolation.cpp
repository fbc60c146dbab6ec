#include "oufpt/interpolation.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "oufpt/errors.hpp"

namespace oufpt {

struct MonotoneCubic::Impl {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw DomainError("MonotoneCubic: need at least two (x, y) pairs of equal length");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw DomainError("MonotoneCubic: knots must be strictly increasing");
    if (x_.size() >= 4) {
        auto xs = x_;
        auto ys = y_;
        impl_ = std::make_shared<const Impl>(
            Impl{boost::math::interpolators::pchip<std::vector<double>>(std::move(xs), std::move(ys))});
    }
}

double MonotoneCubic::operator()(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
        throw RangeError("MonotoneCubic: evaluation point outside the knot range");
    if (impl_) return impl_->spline(x);
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin(), 1), x_.size() - 1);
    const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return (1.0 - w) * y_[i - 1] + w * y_[i];
}

}  // namespace oufpt
