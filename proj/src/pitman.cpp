#include "pcsym/pitman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "pcsym/error.hpp"

namespace pcsym {

namespace {

constexpr double kGridSlack = 1e-10;

std::vector<double> quantile_breaks(const Distribution &outer, std::vector<double> offsets)
{
    // Offsets t where the integrand kinks, mapped to the q = tail(t) scale of `outer`.
    const auto own = outer.kinks();
    offsets.insert(offsets.end(), own.begin(), own.end());
    std::vector<double> q;
    for (double t : offsets) {
        if (t > 0 && std::isfinite(t)) {
            q.push_back(outer.tail(t));
        }
    }
    return q;
}

std::vector<double> scaled(std::vector<double> v, double factor)
{
    for (auto &x : v) {
        x *= factor;
    }
    return v;
}

// 2 * int_0^{1/2} central(offset_Y(q)) dq, central(t) = P(|X - theta| < t).
template <typename Central>
Integral pc_over_y_quantiles(Central central, const Distribution &y, const std::vector<double> &x_kinks, Tolerance tol)
{
    const auto breaks = quantile_breaks(y, x_kinks);
    auto f = [&](double q) { return central(y.upper_offset(q)); };
    auto r = integrate_pieces(f, 0.0, 0.5, breaks, tol);
    return {2 * r.value, 2 * r.abs_error};
}

PcResult quadrature_result(Integral r)
{
    const double p = std::clamp(r.value, 0.0, 1.0);
    return {p, Method::Quadrature, r.abs_error, classify(p)};
}

ConditionReport make_report(ConditionId id, double lhs, double rhs, double margin, double err)
{
    // Margins of the threshold tests are (PC - 1/2) / 4.
    const double band = kDecisionMargin / 4;
    ConditionReport r{id, lhs, rhs, margin, margin >= -std::max(err, 1e-12), Verdict::Indeterminate};
    if (margin > band) {
        r.verdict = Verdict::FirstCloser;
    } else if (margin < -band) {
        r.verdict = Verdict::SecondCloser;
    }
    return r;
}

} // namespace

namespace detail {

void require_common_center(double a, double b)
{
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) {
        throw PreconditionError("estimators must be symmetric about a common center");
    }
}

bool same_width(double a, double b)
{
    if (std::isinf(a) || std::isinf(b)) {
        return a == b;
    }
    return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

} // namespace detail

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::Quadrature: return "quadrature";
    case Method::ClosedForm: return "closed_form";
    case Method::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::FirstCloser: return "first_closer";
    case Verdict::SecondCloser: return "second_closer";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

std::string_view to_string(ConditionId id)
{
    switch (id) {
    case ConditionId::ThresholdTruncated: return "threshold_truncated";
    case ConditionId::ThresholdFull: return "threshold_full";
    case ConditionId::DualThresholdTruncated: return "dual_threshold_truncated";
    case ConditionId::DualThresholdFull: return "dual_threshold_full";
    case ConditionId::VarianceNecessary: return "variance_necessary";
    case ConditionId::OneSidedUpper: return "one_sided_upper";
    case ConditionId::OneSidedLower: return "one_sided_lower";
    }
    return "unknown";
}

Verdict classify(double probability, double margin)
{
    if (probability >= 0.5 + margin) {
        return Verdict::FirstCloser;
    }
    if (probability <= 0.5 - margin) {
        return Verdict::SecondCloser;
    }
    return Verdict::Indeterminate;
}

PcResult pc_quadrature(const Distribution &x, const Distribution &y, Tolerance tol)
{
    detail::require_common_center(x.center(), y.center());
    auto central = [&x](double t) { return x.central_mass(t); };
    return quadrature_result(pc_over_y_quantiles(central, y, x.kinks(), tol));
}

PcResult pc_quadrature(const TwoPiece &x, const Distribution &y, Tolerance tol)
{
    detail::require_common_center(x.center(), y.center());
    const Distribution &base = x.base();
    auto central = [&](double t) {
        if (t <= 0) {
            return 0.0;
        }
        return 1.0 - base.tail(t / x.right_scale()) - base.tail(t / x.left_scale());
    };
    auto kinks = scaled(base.kinks(), x.left_scale());
    const auto upper = scaled(base.kinks(), x.right_scale());
    kinks.insert(kinks.end(), upper.begin(), upper.end());
    return quadrature_result(pc_over_y_quantiles(central, y, kinks, tol));
}

ConditionReport threshold_condition(const Distribution &x, const Distribution &y, Tolerance tol)
{
    detail::require_common_center(x.center(), y.center());
    const double a = x.half_width();
    const double b = y.half_width();
    auto f = [&](double q) { return 1.0 - x.tail(y.upper_offset(q)); };
    const auto breaks = quantile_breaks(y, x.kinks());

    if (a < b && !detail::same_width(a, b)) {
        const double qa = y.tail(a);
        const auto lhs = integrate_pieces(f, qa, 0.5, breaks, tol);
        const double rhs = (1.0 - qa) - 5.0 / 8.0;
        return make_report(ConditionId::ThresholdTruncated, lhs.value, rhs, lhs.value - rhs, lhs.abs_error);
    }
    const auto lhs = integrate_pieces(f, 0.0, 0.5, breaks, tol);
    const double rhs = 3.0 / 8.0;
    return make_report(ConditionId::ThresholdFull, lhs.value, rhs, lhs.value - rhs, lhs.abs_error);
}

ConditionReport dual_threshold_condition(const Distribution &x, const Distribution &y, Tolerance tol)
{
    detail::require_common_center(x.center(), y.center());
    const double a = x.half_width();
    const double b = y.half_width();
    auto f = [&](double q) { return 1.0 - y.tail(x.upper_offset(q)); };
    const auto breaks = quantile_breaks(x, y.kinks());

    if (a > b && !detail::same_width(a, b)) {
        const double qb = x.tail(b);
        const auto lhs = integrate_pieces(f, qb, 0.5, breaks, tol);
        const double rhs = (1.0 - qb) - 5.0 / 8.0;
        return make_report(ConditionId::DualThresholdTruncated, lhs.value, rhs, rhs - lhs.value, lhs.abs_error);
    }
    const auto lhs = integrate_pieces(f, 0.0, 0.5, breaks, tol);
    const double rhs = 3.0 / 8.0;
    return make_report(ConditionId::DualThresholdFull, lhs.value, rhs, rhs - lhs.value, lhs.abs_error);
}

std::vector<double> default_check_grid(const Distribution &x, const Distribution &y)
{
    constexpr int kPoints = 512;
    double width = std::min(x.half_width(), y.half_width());
    if (!std::isfinite(width)) {
        width = std::max(x.upper_offset(1e-6), y.upper_offset(1e-6));
    }
    std::vector<double> grid;
    grid.reserve(kPoints + 3);
    for (int k = 0; k < kPoints; ++k) {
        grid.push_back(0.5 * width * (1 - std::cos((2 * k + 1) * std::numbers::pi / (2 * kPoints))));
    }
    for (double q : {0.1, 0.01, 0.001}) {
        grid.push_back(y.upper_offset(q));
    }
    return grid;
}

bool is_more_peaked(const Distribution &x, const Distribution &y, std::span<const double> grid)
{
    detail::require_common_center(x.center(), y.center());
    if (grid.empty()) {
        throw DomainError("peakedness check needs a nonempty grid");
    }
    return std::all_of(grid.begin(), grid.end(), [&](double t) {
        return x.central_mass(t) >= y.central_mass(t) - kGridSlack;
    });
}

bool dominance_halfline(const Distribution &x, const Distribution &y, std::span<const double> grid)
{
    detail::require_common_center(x.center(), y.center());
    if (x.half_width() > y.half_width() && !detail::same_width(x.half_width(), y.half_width())) {
        throw PreconditionError("half-line dominance requires X's support inside Y's");
    }
    if (grid.empty()) {
        throw DomainError("dominance check needs a nonempty grid");
    }
    // F_X(theta + t) >= G_Y(theta + t)  <=>  tail_X(t) <= tail_Y(t).
    return std::all_of(grid.begin(), grid.end(), [&](double t) {
        if (t < 0) {
            throw DomainError("dominance grid offsets must be nonnegative");
        }
        return x.tail(t) <= y.tail(t) + kGridSlack;
    });
}

ConditionReport variance_necessary_check(const Distribution &x, const Distribution &y)
{
    detail::require_common_center(x.center(), y.center());
    const double vx = x.variance();
    const double vy = y.variance();
    const double margin = vy - vx;
    const double tol = 1e-12 * std::max(1.0, vy);
    ConditionReport r{ConditionId::VarianceNecessary, vx, vy, margin, margin >= -tol, Verdict::Indeterminate};
    if (margin > tol) {
        r.verdict = Verdict::FirstCloser;
    } else if (margin < -tol) {
        r.verdict = Verdict::SecondCloser;
    }
    return r;
}

PcResult pc_convex_combination(const Distribution &x, const Distribution &y, double w, Tolerance tol)
{
    if (!(w >= 0 && w < 1)) {
        throw DomainError("convex combination weight must lie in [0, 1)");
    }
    detail::require_common_center(x.center(), y.center());
    if (!detail::same_width(x.half_width(), y.half_width())) {
        throw PreconditionError("convex combination requires X and Y on the same support");
    }
    if (w == 0) {
        return {0.0, Method::ClosedForm, 0.0, Verdict::Indeterminate};
    }
    // Given Y = theta + t, the event is -(2 - w) t / w < X - theta < t.
    const double k = (2 - w) / w;
    auto central = [&](double t) { return (1.0 - x.tail(t)) - x.tail(k * t); };
    auto kinks = x.kinks();
    const auto inner = scaled(x.kinks(), 1 / k);
    kinks.insert(kinks.end(), inner.begin(), inner.end());
    return quadrature_result(pc_over_y_quantiles(central, y, kinks, tol));
}

PcResult pc_midpoint_vs_weighted(const Distribution &parent, double w, Tolerance tol)
{
    if (!(w >= 0 && w < 1)) {
        throw DomainError("weight must lie in [0, 1)");
    }
    if (w == 0.5) {
        return {1.0, Method::ClosedForm, 0.0, Verdict::Indeterminate};
    }
    // Conditioning on one draw at theta + t, the other must fall in [theta + k t, theta + t]
    // with k = (2w - 3)/(2w + 1) for w < 1/2 and its reciprocal otherwise; k <= -1.
    const double k = w < 0.5 ? (2 * w - 3) / (2 * w + 1) : (2 * w + 1) / (2 * w - 3);
    const double m = -k;
    auto central = [&](double t) { return (1.0 - parent.tail(t)) - parent.tail(m * t); };
    auto kinks = parent.kinks();
    const auto inner = scaled(parent.kinks(), 1 / m);
    kinks.insert(kinks.end(), inner.begin(), inner.end());
    return quadrature_result(pc_over_y_quantiles(central, parent, kinks, tol));
}

double pc_randomized(double pc_first, double pc_second, double zeta)
{
    for (double v : {pc_first, pc_second, zeta}) {
        if (!(v >= 0 && v <= 1)) {
            throw DomainError("randomized PC inputs must lie in [0, 1]");
        }
    }
    return (1 - zeta) * pc_first + zeta * pc_second;
}

double max_randomization(double a, double b)
{
    if (!(a > 0 && a <= 0.5) || !(b > 0 && b <= 0.5)) {
        throw DomainError("max_randomization: a and b must lie in (0, 1/2]");
    }
    return a / (a + b);
}

double uniform_normal_h(double a)
{
    const double phi0 = 1 / std::sqrt(2 * std::numbers::pi);
    const double cdf = 0.5 * std::erfc(-a / std::numbers::sqrt2);
    return a * (cdf - 0.75) + phi0 * std::exp(-0.5 * a * a) - phi0;
}

double uniform_normal_threshold()
{
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(uniform_normal_h, 0.5, 3.0,
                                                            boost::math::tools::eps_tolerance<double>(53), iterations);
    const double root = std::abs(uniform_normal_h(lo)) <= std::abs(uniform_normal_h(hi)) ? lo : hi;
    if (std::abs(uniform_normal_h(root)) > 1e-12) {
        throw ConvergenceError("uniform-normal threshold: residual above 1e-12");
    }
    return root;
}

ConditionReport one_sided_pc_check(const TwoPiece &x, const Distribution &y, std::span<const double> grid)
{
    detail::require_common_center(x.center(), y.center());
    if (!detail::same_width(x.lower_half_width(), y.half_width()) || !detail::same_width(x.upper_half_width(), y.half_width())) {
        throw PreconditionError("one-sided check requires X and Y on the same support");
    }
    if (grid.empty()) {
        throw DomainError("one-sided check needs a nonempty grid");
    }
    const Distribution &base = x.base();
    double skew = std::numeric_limits<double>::infinity();
    double upper = skew;
    double lower = skew;
    for (double t : grid) {
        if (t < 0) {
            throw DomainError("grid offsets must be nonnegative");
        }
        const double below = base.tail(t / x.left_scale());  // P(X < theta - t)
        const double above = base.tail(t / x.right_scale()); // P(X > theta + t)
        const double ty = y.tail(t);
        skew = std::min(skew, above - below);
        upper = std::min(upper, ty - above); // F_X(theta + t) - G_Y(theta + t)
        lower = std::min(lower, ty - below); // G_Y(theta - t) - F_X(theta - t)
    }
    const bool use_upper = upper >= lower;
    const double dominance = use_upper ? upper : lower;
    const double margin = std::min(dominance, skew);
    ConditionReport r{use_upper ? ConditionId::OneSidedUpper : ConditionId::OneSidedLower, dominance, 0.0, margin,
                      margin >= -kGridSlack, Verdict::Indeterminate};
    if (r.holds) {
        r.verdict = Verdict::FirstCloser;
    }
    return r;
}

ConditionReport one_sided_pc_check(const Distribution &x, const Distribution &y, std::span<const double> grid)
{
    return one_sided_pc_check(TwoPiece(x, 1.0, 1.0), y, grid);
}

PcResult pc_normal_weighted_sums(std::span<const double> a, std::span<const double> b, double sigma, double k)
{
    auto check = [](std::span<const double> w) {
        if (w.empty() || std::any_of(w.begin(), w.end(), [](double v) { return !(v > 0); })) {
            throw DomainError("weights must be positive");
        }
        if (std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1) > 1e-12) {
            throw DomainError("weights must sum to 1");
        }
    };
    check(a);
    check(b);
    if (!(sigma > 0) || !(k > 0)) {
        throw DomainError("sigma and k must be positive");
    }
    const double sa = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
    const double sb = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
    const auto x = Distribution::normal(0, sigma * std::sqrt(sa));
    const auto y = Distribution::normal(0, sigma * std::sqrt(k * sb));
    return pc_quadrature(x, y);
}

} // namespace pcsym
