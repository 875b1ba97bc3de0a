#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "pcsym/error.hpp"

namespace pcsym {

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-8;

    Tolerance halved() const { return {abs / 2, rel / 2}; }
    double bound(double value) const { return std::max(abs, rel * std::abs(value)); }
};

struct Integral {
    double value = 0;
    double abs_error = 0;
};

namespace detail {
inline constexpr unsigned kMaxDepth = 22;
}

/// Adaptive Gauss-Kronrod (15/31) on [lo, hi]. Nodes never touch the
/// endpoints. Throws ConvergenceError when the reported error exceeds the
/// tolerance bound.
template <typename F>
Integral integrate(F &&f, double lo, double hi, Tolerance tol = {})
{
    if (!(hi > lo)) {
        return {};
    }
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    // Boost floors its error estimate in absolute terms, so a narrow panel
    // never meets a relative target. Integrate over (0, 1) and rescale.
    const double width = hi - lo;
    auto unit = [&](double s) { return f(lo + width * s); };
    double err = 0;
    // Boost's criterion is relative to the running estimate; ask for the
    // absolute target scaled by the interval so small integrals still resolve.
    const double target = std::min(tol.rel, tol.abs);
    const double value = width * gk::integrate(unit, 0.0, 1.0, detail::kMaxDepth, target, &err);
    err *= width;
    if (std::isfinite(value) && err <= tol.bound(value)) {
        return {value, err};
    }
    // Algebraic endpoint singularities (a heavy tail seen through a light
    // quantile map) defeat Gauss-Kronrod; tanh-sinh clusters nodes there.
    boost::math::quadrature::tanh_sinh<double> ts(18);
    double ts_err = 0;
    const double ts_value = width * ts.integrate(unit, 0.0, 1.0, target, &ts_err);
    ts_err *= width;
    if (std::isfinite(ts_value) && ts_err <= tol.bound(ts_value)) {
        return {ts_value, ts_err};
    }
    throw ConvergenceError("adaptive quadrature did not converge (error estimate " +
                           std::to_string(std::min(err, ts_err)) + ")");
}

/// Integrates over [lo, hi] split at the given interior breakpoints, so that
/// known kinks of the integrand sit on panel boundaries.
template <typename F>
Integral integrate_pieces(F &&f, double lo, double hi, std::span<const double> breaks, Tolerance tol = {})
{
    std::vector<double> cuts{lo};
    for (double b : breaks) {
        if (b > lo && b < hi) {
            cuts.push_back(b);
        }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Integral total;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const auto piece = integrate(f, cuts[k], cuts[k + 1], tol);
        total.value += piece.value;
        total.abs_error += piece.abs_error;
    }
    if (total.abs_error > tol.bound(total.value)) {
        throw ConvergenceError("piecewise quadrature exceeded its error budget");
    }
    return total;
}

/// Tanh-sinh on [lo, hi] for integrands with endpoint singularities.
/// `f(x, xc)` also receives xc, the signed distance to the nearer endpoint
/// (lo - x in the left half, hi - x in the right half), so callers can
/// evaluate tails without cancellation.
template <typename F>
Integral integrate_singular(F &&f, double lo, double hi, Tolerance tol = {})
{
    boost::math::quadrature::tanh_sinh<double> ts(15);
    double err = 0;
    double l1 = 0;
    const double value = ts.integrate(f, lo, hi, std::min(tol.rel, 1e-9), &err, &l1);
    if (!std::isfinite(value) || err > std::max(tol.bound(value), 1e-9)) {
        throw ConvergenceError("tanh-sinh quadrature did not converge (error estimate " + std::to_string(err) + ")");
    }
    return {value, err};
}

} // namespace pcsym
