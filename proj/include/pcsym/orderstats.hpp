#pragma once

#include <string>
#include <vector>

#include "pcsym/distribution.hpp"
#include "pcsym/incomplete_beta.hpp"
#include "pcsym/pitman.hpp"

namespace pcsym {

/// The i-th smallest of n i.i.d. draws from `parent`.
struct OrderStatSpec {
    Distribution parent;
    int i = 1;
    int n = 1;

    OrderStatSpec(Distribution parent, int i, int n);

    /// I_{F(x)}(i, n - i + 1).
    double cdf(double x) const;
    /// True for the middle rank of an odd sample, which is symmetric about the center.
    bool symmetric() const { return n % 2 == 1 && 2 * i == n + 1; }
};

double orderstat_cdf(const OrderStatSpec &s, double x);

/// g_Y(Q_X(u)) / f_X(Q_X(u)) for u in (1/2, 1). X and Y must share center and
/// support. Throws ConvergenceError when f_X vanishes at the quantile.
double density_ratio(const Distribution &x, const Distribution &y, double u);

/// P(|X_{i:n} - theta| < |Y - theta|): twice the integral over u in (1/2, 1)
/// of the density ratio times I_u(i, n-i+1) - I_{1-u}(i, n-i+1), evaluated
/// with u = F_X(t) replaced by the Y-quantile level so the integrand stays
/// bounded. The result is checked to be stable when the tolerance is halved
/// (1e-7); ConvergenceError otherwise.
PcResult order_stat_pc(int i, int n, const Distribution &x, const Distribution &y, Tolerance tol = {});

/// The same probability integrated literally in u with the density ratio,
/// by tanh-sinh. An independent route for cross-checking order_stat_pc.
PcResult order_stat_pc_density_ratio(int i, int n, const Distribution &x, const Distribution &y);

/// P(|X_alpha - theta| < |X - theta|) for the beta-generated X_alpha and its
/// parent X: 2 - 4 H(alpha), H(alpha) = (1 - I_{1/2}(alpha + 2, alpha + 1)) / 2.
/// Distribution-free. Throws DomainError for alpha < 0.
double beta_generated_pc(double alpha);

/// P(|X - theta| < |X_alpha - theta|) for alpha in (-1, 0], by quadrature.
PcResult parent_vs_beta_generated_pc(double alpha, const Distribution &parent, Tolerance tol = {});

struct PiTable {
    int n = 0;
    std::vector<double> values; // values[i - 1] = P(|X_{i:n} - theta| < |Y - theta|)
    Distribution x;
    Distribution y;
    double max_abs_error = 0;
};

PiTable order_stat_pc_table(int n, const Distribution &x, const Distribution &y, Tolerance tol = {});

/// P(|X_{m:2m-1} - theta| < |Y - theta|) for m = 1..m_max.
std::vector<double> median_pc_sequence(int m_max, const Distribution &x, const Distribution &y, Tolerance tol = {});

/// P(|X_{m:2m-1} - theta| < |X'_{m':2m'-1} - theta|) for two independent
/// sample medians from `parent`.
PcResult competing_medians_pc(int m, int m_other, const Distribution &parent, Tolerance tol = {});

std::string pi_table_csv(const PiTable &table);

} // namespace pcsym
