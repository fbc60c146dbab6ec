#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite panels.
//
// The integrator keeps every panel in a max-heap keyed on its local error
// estimate and bisects the worst one until the summed error meets
// max(abs_tol, rel_tol * |I|). Initial breakpoints seed the heap, which is
// how callers supply graded meshes toward endpoint singularities.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <queue>
#include <span>
#include <vector>

namespace oufpt::quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-12;
    int max_panels = 4000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (7-point rule).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 15> fv{};
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += kronrod_weights[j] * (f1 + f2);
        abs_sum += kronrod_weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * kronrod;
    double asc = kronrod_weights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        asc += kronrod_weights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    const double value = kronrod * half;
    double err = std::abs((kronrod - gauss) * half);
    const double resasc = asc * std::abs(half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round = 50.0 * 2.220446049250313e-16 * abs_sum * std::abs(half);
    if (round > err) err = round;
    if (!std::isfinite(value)) err = HUGE_VAL;
    return {a, b, value, err};
}

}  // namespace detail

// Integrate f over the panels defined by consecutive entries of `breaks`
// (which must be sorted). Returns the sum over all panels.
template <class F>
Result integrate_panels(F&& f, std::span<const double> breaks, const Options& opt = {}) {
    Result out;
    if (breaks.size() < 2) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto p = detail::gk15(f, breaks[i], breaks[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int count = static_cast<int>(heap.size());
    auto done = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!heap.empty() && !done() && count < opt.max_panels) {
        auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // panel at machine resolution
        heap.pop();
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = total_err;
    out.panels = count;
    out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
                    std::isfinite(total);
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    const std::array<double, 2> br{a, b};
    return integrate_panels(f, std::span<const double>(br), opt);
}

// Breakpoints on [a, b] refined geometrically (ratio 2) toward `a`, down to
// a panel of width (b - a) * 2^-levels. Used for integrands with an
// integrable singularity at a.
inline std::vector<double> graded_toward_left(double a, double b, int levels) {
    std::vector<double> br;
    br.reserve(static_cast<std::size_t>(levels) + 2);
    br.push_back(a);
    for (int k = levels; k >= 1; --k) br.push_back(a + (b - a) * std::ldexp(1.0, -k));
    br.push_back(b);
    return br;
}

}  // namespace oufpt::quad
