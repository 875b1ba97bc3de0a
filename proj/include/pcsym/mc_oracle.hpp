#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "pcsym/distribution.hpp"
#include "pcsym/pitman.hpp"
#include "pcsym/rss.hpp"

namespace pcsym {

struct McEstimate {
    double p_hat = 0;
    double std_err = 0; // sqrt(p_hat (1 - p_hat) / reps)
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::size_t ties = 0;
};

PcResult to_pc_result(const McEstimate &e);

/// Variables drawn once per replication and shared by both estimators.
struct McContext {
    std::vector<Law> sources;
    double theta = 0;
};

struct EstimatorSpec;

namespace estimator {

/// The value of context source `source` in this replication.
struct Draw {
    std::size_t source = 0;
};

/// sum_k weight_k * source_k over shared context sources.
struct Linear {
    std::vector<std::pair<std::size_t, double>> terms;
};

/// i-th smallest of a fresh i.i.d. sample of size n.
struct OrderStatistic {
    Distribution parent;
    int i = 1;
    int n = 1;
};

/// `second` with probability zeta, otherwise `first` (the pc_randomized convention).
struct Randomized {
    double zeta = 0.5;
    std::shared_ptr<const EstimatorSpec> first;
    std::shared_ptr<const EstimatorSpec> second;
};

/// The estimator of a sampling design applied to a fresh sample.
struct Design {
    RssScheme scheme;
    Distribution parent;
};

} // namespace estimator

struct EstimatorSpec {
    std::variant<estimator::Draw, estimator::Linear, estimator::OrderStatistic, estimator::Randomized,
                 estimator::Design>
        kind;
};

EstimatorSpec draw_of(std::size_t source);
EstimatorSpec order_statistic(const Distribution &parent, int i, int n);
EstimatorSpec randomized(double zeta, EstimatorSpec first, EstimatorSpec second);

/// Brute-force P(|A - theta| < |B - theta|): simulate, compare, count. The
/// inequality is strict; exact ties are counted separately. Replication r
/// uses substream r of `seed`, so the result is bitwise identical for any
/// worker count. Throws DomainError for reps < 10^4 and PreconditionError for
/// a Draw/Linear that names a missing source.
McEstimate mc_pc(const EstimatorSpec &a, const EstimatorSpec &b, const McContext &ctx, std::size_t reps,
                 std::uint64_t seed, unsigned workers = 0);

/// Two independent single draws, X from `x` and Y from `y`.
McEstimate mc_pc(const Law &x, const Law &y, std::size_t reps, std::uint64_t seed, unsigned workers = 0);

/// P(|X_{i:n} - theta| < |Y - theta|) for every rank i at once: each
/// replication sorts one fresh sample of n and compares every rank with one
/// independent Y. Entries are individually valid estimates (correlated
/// across i).
std::vector<McEstimate> mc_order_stat_table(int n, const Distribution &x, const Distribution &y, std::size_t reps,
                                            std::uint64_t seed, unsigned workers = 0);

/// |estimate - mc.p_hat| within `sigmas` standard errors. A zero standard
/// error (p_hat at 0 or 1) falls back to one binomial count.
bool agrees(double estimate, const McEstimate &mc, double sigmas = 3.5);

} // namespace pcsym
