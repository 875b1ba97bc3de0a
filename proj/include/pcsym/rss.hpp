#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcsym/distribution.hpp"
#include "pcsym/pitman.hpp"
#include "pcsym/random.hpp"

namespace pcsym {

enum class SchemeKind { MedianRss, RandomizedMedianRss, SimpleRandomSample };

enum class EstimatorId {
    MedianOfMedians,           // median of a median ranked set sample (odd n)
    RandomizedMedianOfMedians, // coin-randomized middle order statistic (even n)
    SrsMedian,
    SrsMean,
};

std::string_view to_string(SchemeKind kind);
std::string_view to_string(EstimatorId id);

/// A balanced ranked-set design with perfect ranking. Every design measures
/// exactly `set_size` units per cycle, so comparisons are budget-fair.
struct RssScheme {
    SchemeKind kind = SchemeKind::MedianRss;
    int set_size = 1;
    double zeta = 0.5;                          // randomized median only
    EstimatorId srs_estimator = EstimatorId::SrsMedian; // simple random sample only

    static RssScheme median(int n);
    static RssScheme randomized_median(int n, double zeta = 0.5);
    static RssScheme srs_median(int n);
    static RssScheme srs_mean(int n);

    /// Parses "median:3", "randomized-median:4", "randomized-median:4:0.8",
    /// "srs-median:3" and "srs-mean:4".
    static RssScheme parse(std::string_view text);
    std::string label() const;

    /// Half size: n = 2m - 1 (median) or n = 2m (randomized median).
    int m() const;
    EstimatorId estimator() const;
    /// Throws PreconditionError on a parity or parameter mismatch.
    void validate() const;
};

struct EstimateRecord {
    EstimatorId estimator_id;
    double value = 0;
    std::uint64_t seed = 0;
    int measurements_used = 0;
};

/// The 2m - 1 measured medians, each from its own fresh set of 2m - 1 draws.
std::vector<double> draw_median_rss(const Distribution &d, int m, Stream &rng);

/// Middle order statistic of an odd-length sample. PreconditionError otherwise.
double median_rss_estimate(std::span<const double> sample);

/// 2m measured units; unit k is rank m of its set of 2m with probability zeta
/// and rank m + 1 otherwise.
std::vector<double> draw_randomized_median_rss(const Distribution &d, int m, double zeta, Stream &rng);

/// Rank m or m + 1 of an even-length sample of size 2m, chosen by a fair coin.
double randomized_median_estimate(std::span<const double> sample, Stream &rng);

/// One draw of the scheme's estimator.
double draw_estimate(const RssScheme &scheme, const Distribution &d, Stream &rng);
EstimateRecord estimate(const RssScheme &scheme, const Distribution &d, std::uint64_t seed);

struct DesignComparison {
    RssScheme scheme_a;
    RssScheme scheme_b;
    Distribution parent;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    PcResult result; // probability = p_hat, abs_error_estimate = binomial std error
};

/// Monte Carlo P(|est_A - theta| < |est_B - theta|). Replication r uses
/// substream r of `seed`. Exact ties count as non-events and are reported.
/// Fewer than 10^4 replications sets result.low_reps.
DesignComparison compare_designs(const RssScheme &a, const RssScheme &b, const Distribution &d, std::size_t reps,
                                 std::uint64_t seed, unsigned workers = 0);

} // namespace pcsym
