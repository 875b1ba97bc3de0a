#include "pcsym/rss.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <numeric>

#include "pcsym/error.hpp"

namespace pcsym {

namespace {

double nth_of(std::vector<double> &v, std::size_t k)
{
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

struct WinCount {
    std::size_t wins = 0;
    std::size_t ties = 0;
    WinCount &operator+=(const WinCount &o)
    {
        wins += o.wins;
        ties += o.ties;
        return *this;
    }
};

} // namespace

std::string_view to_string(SchemeKind kind)
{
    switch (kind) {
    case SchemeKind::MedianRss: return "median_rss";
    case SchemeKind::RandomizedMedianRss: return "randomized_median_rss";
    case SchemeKind::SimpleRandomSample: return "simple_random_sample";
    }
    return "unknown";
}

std::string_view to_string(EstimatorId id)
{
    switch (id) {
    case EstimatorId::MedianOfMedians: return "median_of_medians";
    case EstimatorId::RandomizedMedianOfMedians: return "randomized_median_of_medians";
    case EstimatorId::SrsMedian: return "srs_median";
    case EstimatorId::SrsMean: return "srs_mean";
    }
    return "unknown";
}

RssScheme RssScheme::median(int n)
{
    RssScheme s{SchemeKind::MedianRss, n};
    s.validate();
    return s;
}

RssScheme RssScheme::randomized_median(int n, double zeta)
{
    RssScheme s{SchemeKind::RandomizedMedianRss, n, zeta};
    s.validate();
    return s;
}

RssScheme RssScheme::srs_median(int n)
{
    RssScheme s{SchemeKind::SimpleRandomSample, n, 0.5, EstimatorId::SrsMedian};
    s.validate();
    return s;
}

RssScheme RssScheme::srs_mean(int n)
{
    RssScheme s{SchemeKind::SimpleRandomSample, n, 0.5, EstimatorId::SrsMean};
    s.validate();
    return s;
}

RssScheme RssScheme::parse(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw InvalidConstruction("scheme must look like kind:n, got '" + std::string(text) + "'");
    }
    const std::string_view kind = text.substr(0, colon);
    std::string_view rest = text.substr(colon + 1);
    std::string_view zeta_text;
    if (const auto second = rest.find(':'); second != std::string_view::npos) {
        zeta_text = rest.substr(second + 1);
        rest = rest.substr(0, second);
    }
    int n = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
        throw InvalidConstruction("scheme set size is not an integer: '" + std::string(rest) + "'");
    }
    double zeta = 0.5;
    if (!zeta_text.empty()) {
        try {
            std::size_t used = 0;
            zeta = std::stod(std::string(zeta_text), &used);
            if (used != zeta_text.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw InvalidConstruction("scheme randomization is not a number: '" + std::string(zeta_text) + "'");
        }
        if (kind != "randomized-median") {
            throw InvalidConstruction("only randomized-median takes a randomization probability");
        }
    }
    try {
        if (kind == "median") return median(n);
        if (kind == "randomized-median") return randomized_median(n, zeta);
        if (kind == "srs-median") return srs_median(n);
        if (kind == "srs-mean") return srs_mean(n);
    } catch (const PreconditionError &e) {
        throw InvalidConstruction(e.what());
    }
    throw InvalidConstruction("unknown scheme kind '" + std::string(kind) + "'");
}

std::string RssScheme::label() const
{
    switch (kind) {
    case SchemeKind::MedianRss: return "median:" + std::to_string(set_size);
    case SchemeKind::RandomizedMedianRss: {
        std::string s = "randomized-median:" + std::to_string(set_size);
        if (zeta != 0.5) {
            char buf[32];
            std::snprintf(buf, sizeof buf, ":%.10g", zeta);
            s += buf;
        }
        return s;
    }
    case SchemeKind::SimpleRandomSample:
        return (srs_estimator == EstimatorId::SrsMean ? "srs-mean:" : "srs-median:") + std::to_string(set_size);
    }
    return "unknown";
}

int RssScheme::m() const
{
    return kind == SchemeKind::RandomizedMedianRss ? set_size / 2 : (set_size + 1) / 2;
}

EstimatorId RssScheme::estimator() const
{
    switch (kind) {
    case SchemeKind::MedianRss: return EstimatorId::MedianOfMedians;
    case SchemeKind::RandomizedMedianRss: return EstimatorId::RandomizedMedianOfMedians;
    case SchemeKind::SimpleRandomSample: return srs_estimator;
    }
    return srs_estimator;
}

void RssScheme::validate() const
{
    if (set_size < 1) {
        throw PreconditionError("set size must be at least 1");
    }
    if (kind == SchemeKind::MedianRss && set_size % 2 == 0) {
        throw PreconditionError("median RSS needs an odd set size");
    }
    if (kind == SchemeKind::RandomizedMedianRss && set_size % 2 == 1) {
        throw PreconditionError("randomized median RSS needs an even set size");
    }
    if (!(zeta >= 0 && zeta <= 1)) {
        throw PreconditionError("randomization probability must lie in [0, 1]");
    }
    if (kind == SchemeKind::SimpleRandomSample && srs_estimator != EstimatorId::SrsMedian
        && srs_estimator != EstimatorId::SrsMean) {
        throw PreconditionError("simple random samples are summarized by their median or mean");
    }
}

std::vector<double> draw_median_rss(const Distribution &d, int m, Stream &rng)
{
    if (m < 1) {
        throw PreconditionError("median RSS needs m >= 1");
    }
    const int n = 2 * m - 1;
    std::vector<double> measured(n);
    std::vector<double> set(n);
    for (auto &value : measured) {
        for (auto &x : set) {
            x = d.draw(rng);
        }
        value = nth_of(set, static_cast<std::size_t>(m - 1));
    }
    return measured;
}

double median_rss_estimate(std::span<const double> sample)
{
    if (sample.empty() || sample.size() % 2 == 0) {
        throw PreconditionError("median-of-medians estimate needs an odd-length sample");
    }
    std::vector<double> v(sample.begin(), sample.end());
    return nth_of(v, v.size() / 2);
}

std::vector<double> draw_randomized_median_rss(const Distribution &d, int m, double zeta, Stream &rng)
{
    if (m < 1) {
        throw PreconditionError("randomized median RSS needs m >= 1");
    }
    if (!(zeta >= 0 && zeta <= 1)) {
        throw DomainError("randomization probability must lie in [0, 1]");
    }
    const int n = 2 * m;
    std::vector<double> measured(n);
    std::vector<double> set(n);
    for (auto &value : measured) {
        for (auto &x : set) {
            x = d.draw(rng);
        }
        const bool lower = rng.bernoulli(zeta);
        value = nth_of(set, static_cast<std::size_t>(lower ? m - 1 : m));
    }
    return measured;
}

double randomized_median_estimate(std::span<const double> sample, Stream &rng)
{
    if (sample.empty() || sample.size() % 2 == 1) {
        throw PreconditionError("randomized median estimate needs an even-length sample");
    }
    std::vector<double> v(sample.begin(), sample.end());
    const std::size_t m = v.size() / 2;
    const bool lower = rng.bernoulli(0.5);
    return nth_of(v, lower ? m - 1 : m);
}

double draw_estimate(const RssScheme &scheme, const Distribution &d, Stream &rng)
{
    switch (scheme.kind) {
    case SchemeKind::MedianRss: {
        const auto s = draw_median_rss(d, scheme.m(), rng);
        return median_rss_estimate(s);
    }
    case SchemeKind::RandomizedMedianRss: {
        const auto s = draw_randomized_median_rss(d, scheme.m(), scheme.zeta, rng);
        return randomized_median_estimate(s, rng);
    }
    case SchemeKind::SimpleRandomSample: {
        auto s = d.sample(static_cast<std::size_t>(scheme.set_size), rng);
        if (scheme.srs_estimator == EstimatorId::SrsMean) {
            return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
        }
        std::sort(s.begin(), s.end());
        const std::size_t k = s.size() / 2;
        return s.size() % 2 == 1 ? s[k] : 0.5 * (s[k - 1] + s[k]);
    }
    }
    throw PreconditionError("unknown scheme");
}

EstimateRecord estimate(const RssScheme &scheme, const Distribution &d, std::uint64_t seed)
{
    scheme.validate();
    Stream rng(seed);
    return {scheme.estimator(), draw_estimate(scheme, d, rng), seed, scheme.set_size};
}

DesignComparison compare_designs(const RssScheme &a, const RssScheme &b, const Distribution &d, std::size_t reps,
                                 std::uint64_t seed, unsigned workers)
{
    a.validate();
    b.validate();
    if (reps == 0) {
        throw DomainError("compare_designs needs at least one replication");
    }
    const double theta = d.center();
    const auto counts = parallel_accumulate<WinCount>(
        reps,
        [&](std::size_t r, WinCount &acc) {
            Stream rng = Stream::substream(seed, r);
            const double ea = std::abs(draw_estimate(a, d, rng) - theta);
            const double eb = std::abs(draw_estimate(b, d, rng) - theta);
            if (ea < eb) {
                ++acc.wins;
            } else if (ea == eb) {
                ++acc.ties;
            }
        },
        workers);

    const double n = static_cast<double>(reps);
    const double p = static_cast<double>(counts.wins) / n;
    const double se = std::sqrt(p * (1 - p) / n);
    PcResult result{p, Method::MonteCarlo, se, classify(p, std::max(kDecisionMargin, 3.5 * se)), reps, counts.ties,
                    reps < 10000};
    return {a, b, d, reps, seed, result};
}

} // namespace pcsym
