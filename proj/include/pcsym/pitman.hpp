#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pcsym/distribution.hpp"
#include "pcsym/quadrature.hpp"

namespace pcsym {

enum class Method { Quadrature, ClosedForm, MonteCarlo };
enum class Verdict { FirstCloser, SecondCloser, Indeterminate };

std::string_view to_string(Method method);
std::string_view to_string(Verdict verdict);

/// Probabilities within this distance of 1/2 are reported as Indeterminate.
inline constexpr double kDecisionMargin = 1e-6;

Verdict classify(double probability, double margin = kDecisionMargin);

/// P(|first - theta| < |second - theta|) with provenance.
struct PcResult {
    double probability = 0;
    Method method = Method::Quadrature;
    double abs_error_estimate = 0;
    Verdict closer = Verdict::Indeterminate;
    // Monte Carlo diagnostics; zero for analytic results.
    std::size_t reps = 0;
    std::size_t ties = 0;
    bool low_reps = false;
};

enum class ConditionId {
    ThresholdTruncated,   // int_0^a F_X g_Y >= G_Y(a) - 5/8, X supported inside Y
    ThresholdFull,        // int_0^b F_X g_Y >= 3/8
    DualThresholdTruncated, // int_0^b G_Y f_X <= F_X(b) - 5/8, Y supported inside X
    DualThresholdFull,    // int_0^a G_Y f_X <= 3/8
    VarianceNecessary,    // Var X <= Var Y
    OneSidedUpper,        // right skew plus F_X >= G_Y above the center
    OneSidedLower,        // right skew plus F_X <= G_Y below the center
};

std::string_view to_string(ConditionId id);

/// One inequality evaluated numerically. `margin` is signed so that
/// margin >= 0 means the inequality holds.
struct ConditionReport {
    ConditionId id;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    bool holds = false;
    Verdict verdict = Verdict::Indeterminate;
};

/// P(|X - theta| < |Y - theta|) for independent X, Y symmetric about a common
/// theta, integrated over the Y-quantile scale so every support maps to a
/// bounded interval. Throws PreconditionError if the centers differ.
PcResult pc_quadrature(const Distribution &x, const Distribution &y, Tolerance tol = {});

/// Same probability for an asymmetric X with median theta.
PcResult pc_quadrature(const TwoPiece &x, const Distribution &y, Tolerance tol = {});

/// Integral threshold test for X being Pitman closer than Y. Uses the
/// truncated form (against G_Y(a) - 5/8) when X's support is strictly inside
/// Y's, and the 3/8 form otherwise. The margin equals (PC - 1/2) / 4.
ConditionReport threshold_condition(const Distribution &x, const Distribution &y, Tolerance tol = {});

/// The equivalent test phrased through int G_Y f_X (roles of the two cdfs
/// swapped). Truncated form when Y's support is strictly inside X's.
ConditionReport dual_threshold_condition(const Distribution &x, const Distribution &y, Tolerance tol = {});

/// 512 Chebyshev-spaced offsets on (0, w), w the narrower support half-width
/// (or a far quantile when both are unbounded), plus Y's 0.9/0.99/0.999
/// quantile offsets.
std::vector<double> default_check_grid(const Distribution &x, const Distribution &y);

/// P(|X - theta| <= t) >= P(|Y - theta| <= t) at every grid offset t.
bool is_more_peaked(const Distribution &x, const Distribution &y, std::span<const double> grid);

/// F_X(theta + t) >= G_Y(theta + t) at every grid offset t >= 0. Requires
/// X's support half-width not to exceed Y's.
bool dominance_halfline(const Distribution &x, const Distribution &y, std::span<const double> grid);

ConditionReport variance_necessary_check(const Distribution &x, const Distribution &y);

/// P(|w X + (1 - w) Y - theta| < |Y - theta|) for 0 <= w < 1 with X, Y on the
/// same support. At w = 0 both sides are the same estimator: probability 0
/// under the strict inequality, verdict Indeterminate.
PcResult pc_convex_combination(const Distribution &x, const Distribution &y, double w, Tolerance tol = {});

/// P(|(X1 + X2)/2 - theta| <= |w X1 + (1 - w) X2 - theta|) for X1, X2 i.i.d.
/// At w = 1/2 the estimators coincide: probability 1, verdict Indeterminate.
PcResult pc_midpoint_vs_weighted(const Distribution &parent, double w, Tolerance tol = {});

/// Pitman-closeness probability of the randomized estimator that uses the
/// first estimator with probability 1 - zeta and the second with probability
/// zeta, given each one's probability against a common competitor.
double pc_randomized(double pc_first, double pc_second, double zeta);

/// Largest zeta keeping the randomized estimator Pitman closer when the first
/// estimator wins with 1/2 + a and the second with 1/2 - b: a / (a + b).
double max_randomization(double a, double b);

/// h(a) = a (Phi(a) - 3/4) + phi(a) - phi(0); Uniform(-a, a) beats N(0, 1)
/// exactly when h(a) <= 0.
double uniform_normal_h(double a);

/// Positive root of uniform_normal_h, bracketed on [0.5, 3].
double uniform_normal_threshold();

/// Relaxed-symmetry check for an asymmetric X: right skew
/// P(X < theta - t) <= P(X > theta + t) on the grid, together with cdf
/// dominance above the center or below it. `lhs` is the better dominance
/// slack, `margin` the smaller of that and the skew slack.
ConditionReport one_sided_pc_check(const TwoPiece &x, const Distribution &y, std::span<const double> grid);
ConditionReport one_sided_pc_check(const Distribution &x, const Distribution &y, std::span<const double> grid);

/// PC of sum a_i X_i against sum b_i Y_i with X_i ~ N(theta, sigma^2) and
/// Y_i ~ N(theta, k sigma^2); weights positive and summing to 1.
PcResult pc_normal_weighted_sums(std::span<const double> a, std::span<const double> b, double sigma, double k);

namespace detail {
void require_common_center(double a, double b);
bool same_width(double a, double b);
} // namespace detail

} // namespace pcsym
