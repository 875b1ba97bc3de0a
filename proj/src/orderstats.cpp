#include "pcsym/orderstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pcsym/error.hpp"

namespace pcsym {

namespace {

void require_rank(int i, int n)
{
    if (n < 1 || i < 1 || i > n) {
        throw PreconditionError("order statistic rank must satisfy 1 <= i <= n");
    }
}

void require_shared_support(const Distribution &x, const Distribution &y)
{
    detail::require_common_center(x.center(), y.center());
    if (!detail::same_width(x.half_width(), y.half_width())) {
        throw PreconditionError("order-statistic closeness needs X and Y on the same support");
    }
}

// P(|X_{i:n} - theta| < t) from the lower tail level l = P(X - theta < -t).
// Written symmetrically in (i, n - i + 1) so mirrored ranks evaluate bit-identically.
double central_order_mass(int i, int n, double l)
{
    const double a = std::min(i, n - i + 1);
    const double b = std::max(i, n - i + 1);
    return 1.0 - (reg_inc_beta(a, b, l) + reg_inc_beta(b, a, l));
}

Integral order_stat_integral(int i, int n, const Distribution &x, const Distribution &y, Tolerance tol)
{
    auto f = [&](double q) { return central_order_mass(i, n, x.tail(y.upper_offset(q))); };
    std::vector<double> breaks;
    auto kinks = x.kinks();
    const auto own = y.kinks();
    kinks.insert(kinks.end(), own.begin(), own.end());
    for (double t : kinks) {
        breaks.push_back(y.tail(t));
    }
    const auto r = integrate_pieces(f, 0.0, 0.5, breaks, tol);
    return {2 * r.value, 2 * r.abs_error};
}

} // namespace

OrderStatSpec::OrderStatSpec(Distribution parent_, int i_, int n_) : parent(std::move(parent_)), i(i_), n(n_)
{
    require_rank(i, n);
}

double OrderStatSpec::cdf(double x) const { return reg_inc_beta(i, n - i + 1, parent.cdf(x)); }

double orderstat_cdf(const OrderStatSpec &s, double x) { return s.cdf(x); }

double density_ratio(const Distribution &x, const Distribution &y, double u)
{
    require_shared_support(x, y);
    if (!(u >= 0.5 && u < 1)) {
        throw DomainError("density ratio: u must lie in [1/2, 1)");
    }
    const double t = x.upper_offset(1 - u);
    const double fx = x.density_at_offset(t);
    if (!(fx > 0)) {
        throw ConvergenceError("density ratio: f_X vanishes at the quantile");
    }
    return y.density_at_offset(t) / fx;
}

PcResult order_stat_pc(int i, int n, const Distribution &x, const Distribution &y, Tolerance tol)
{
    require_rank(i, n);
    require_shared_support(x, y);
    const auto coarse = order_stat_integral(i, n, x, y, tol);
    const auto fine = order_stat_integral(i, n, x, y, tol.halved());
    if (std::abs(coarse.value - fine.value) > 1e-7) {
        throw ConvergenceError("order-statistic closeness unstable under tolerance halving");
    }
    const double p = std::clamp(fine.value, 0.0, 1.0);
    const double err = std::max(fine.abs_error, std::abs(coarse.value - fine.value));
    return {p, Method::Quadrature, err, classify(p)};
}

PcResult order_stat_pc_density_ratio(int i, int n, const Distribution &x, const Distribution &y)
{
    require_rank(i, n);
    require_shared_support(x, y);
    const double a = i;
    const double b = n - i + 1;
    auto f = [&](double u, double uc) {
        // uc = 1 - u on the right half of [1/2, 1].
        const double lower = uc > 0 ? uc : 1 - u;
        if (!(lower > 0)) {
            return 0.0;
        }
        const double t = x.upper_offset(std::min(lower, 0.5));
        const double fx = x.density_at_offset(t);
        if (!(fx > 0)) {
            // Only reachable when t rounds onto a bounded support edge.
            return 0.0;
        }
        const double ratio = y.density_at_offset(t) / fx;
        const double inner = (1 - reg_inc_beta(b, a, lower)) - reg_inc_beta(a, b, lower);
        return ratio * inner;
    };
    const auto r = integrate_singular(f, 0.5, 1.0);
    const double p = std::clamp(2 * r.value, 0.0, 1.0);
    return {p, Method::Quadrature, 2 * r.abs_error, classify(p)};
}

double beta_generated_pc(double alpha)
{
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw DomainError("beta_generated_pc: alpha must be >= 0");
    }
    const double h = 0.5 * (1 - reg_inc_beta(alpha + 2, alpha + 1, 0.5));
    return 2 - 4 * h;
}

PcResult parent_vs_beta_generated_pc(double alpha, const Distribution &parent, Tolerance tol)
{
    if (!(alpha > -1 && alpha <= 0)) {
        throw DomainError("parent_vs_beta_generated_pc: alpha must lie in (-1, 0]");
    }
    return pc_quadrature(parent, Distribution::beta_generated(alpha, parent), tol);
}

PiTable order_stat_pc_table(int n, const Distribution &x, const Distribution &y, Tolerance tol)
{
    if (n < 1) {
        throw PreconditionError("table size must be at least 1");
    }
    PiTable table{n, {}, x, y, 0};
    table.values.reserve(n);
    for (int i = 1; i <= n; ++i) {
        const auto r = order_stat_pc(i, n, x, y, tol);
        table.values.push_back(r.probability);
        table.max_abs_error = std::max(table.max_abs_error, r.abs_error_estimate);
    }
    return table;
}

std::vector<double> median_pc_sequence(int m_max, const Distribution &x, const Distribution &y, Tolerance tol)
{
    if (m_max < 1) {
        throw PreconditionError("median sequence needs m_max >= 1");
    }
    std::vector<double> out;
    out.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
        out.push_back(order_stat_pc(m, 2 * m - 1, x, y, tol).probability);
    }
    return out;
}

PcResult competing_medians_pc(int m, int m_other, const Distribution &parent, Tolerance tol)
{
    if (m < 1 || m_other < 1) {
        throw PreconditionError("median half-sizes must be at least 1");
    }
    // The median of 2m'-1 draws has the beta-generated density with alpha = m' - 1.
    return order_stat_pc(m, 2 * m - 1, parent, Distribution::beta_generated(m_other - 1, parent), tol);
}

std::string pi_table_csv(const PiTable &table)
{
    std::string out = "i,pi\n";
    char buf[64];
    for (int i = 1; i <= table.n; ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.10g\n", i, table.values[i - 1]);
        out += buf;
    }
    return out;
}

} // namespace pcsym
