#include "pcsym/mc_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pcsym/error.hpp"

namespace pcsym {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

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

void require_reps(std::size_t reps)
{
    if (reps < 10000) {
        throw DomainError("Monte Carlo oracle needs at least 10^4 replications");
    }
}

McEstimate finish(const WinCount &c, std::size_t reps, std::uint64_t seed)
{
    const double n = static_cast<double>(reps);
    const double p = static_cast<double>(c.wins) / n;
    return {p, std::sqrt(p * (1 - p) / n), reps, seed, c.ties};
}

void validate(const EstimatorSpec &spec, std::size_t sources)
{
    std::visit(overloaded{
                   [&](const estimator::Draw &d) {
                       if (d.source >= sources) {
                           throw PreconditionError("estimator refers to a missing context source");
                       }
                   },
                   [&](const estimator::Linear &l) {
                       if (l.terms.empty()) {
                           throw PreconditionError("linear estimator needs at least one term");
                       }
                       for (const auto &[k, w] : l.terms) {
                           (void)w;
                           if (k >= sources) {
                               throw PreconditionError("estimator refers to a missing context source");
                           }
                       }
                   },
                   [](const estimator::OrderStatistic &o) {
                       if (o.n < 1 || o.i < 1 || o.i > o.n) {
                           throw PreconditionError("order statistic rank must satisfy 1 <= i <= n");
                       }
                   },
                   [&](const estimator::Randomized &r) {
                       if (!(r.zeta >= 0 && r.zeta <= 1) || !r.first || !r.second) {
                           throw PreconditionError("randomized estimator needs zeta in [0, 1] and two branches");
                       }
                       validate(*r.first, sources);
                       validate(*r.second, sources);
                   },
                   [](const estimator::Design &d) { d.scheme.validate(); },
               },
               spec.kind);
}

double evaluate(const EstimatorSpec &spec, std::span<const double> values, Stream &rng)
{
    return std::visit(overloaded{
                          [&](const estimator::Draw &d) { return values[d.source]; },
                          [&](const estimator::Linear &l) {
                              double s = 0;
                              for (const auto &[k, w] : l.terms) {
                                  s += w * values[k];
                              }
                              return s;
                          },
                          [&](const estimator::OrderStatistic &o) {
                              std::vector<double> sample = o.parent.sample(static_cast<std::size_t>(o.n), rng);
                              std::nth_element(sample.begin(), sample.begin() + (o.i - 1), sample.end());
                              return sample[static_cast<std::size_t>(o.i - 1)];
                          },
                          [&](const estimator::Randomized &r) {
                              return rng.bernoulli(r.zeta) ? evaluate(*r.second, values, rng)
                                                           : evaluate(*r.first, values, rng);
                          },
                          [&](const estimator::Design &d) { return draw_estimate(d.scheme, d.parent, rng); },
                      },
                      spec.kind);
}

} // namespace

PcResult to_pc_result(const McEstimate &e)
{
    return {e.p_hat, Method::MonteCarlo, e.std_err, classify(e.p_hat, std::max(kDecisionMargin, 3.5 * e.std_err)),
            e.reps, e.ties, e.reps < 10000};
}

EstimatorSpec draw_of(std::size_t source) { return {estimator::Draw{source}}; }

EstimatorSpec order_statistic(const Distribution &parent, int i, int n)
{
    return {estimator::OrderStatistic{parent, i, n}};
}

EstimatorSpec randomized(double zeta, EstimatorSpec first, EstimatorSpec second)
{
    return {estimator::Randomized{zeta, std::make_shared<const EstimatorSpec>(std::move(first)),
                                  std::make_shared<const EstimatorSpec>(std::move(second))}};
}

McEstimate mc_pc(const EstimatorSpec &a, const EstimatorSpec &b, const McContext &ctx, std::size_t reps,
                 std::uint64_t seed, unsigned workers)
{
    require_reps(reps);
    validate(a, ctx.sources.size());
    validate(b, ctx.sources.size());
    const double theta = ctx.theta;
    const auto counts = parallel_accumulate<WinCount>(
        reps,
        [&](std::size_t r, WinCount &acc) {
            Stream rng = Stream::substream(seed, r);
            std::vector<double> values(ctx.sources.size());
            for (std::size_t k = 0; k < values.size(); ++k) {
                values[k] = draw(ctx.sources[k], rng);
            }
            const double ea = std::abs(evaluate(a, values, rng) - theta);
            const double eb = std::abs(evaluate(b, values, rng) - theta);
            if (ea < eb) {
                ++acc.wins;
            } else if (ea == eb) {
                ++acc.ties;
            }
        },
        workers);
    return finish(counts, reps, seed);
}

McEstimate mc_pc(const Law &x, const Law &y, std::size_t reps, std::uint64_t seed, unsigned workers)
{
    detail::require_common_center(center_of(x), center_of(y));
    McContext ctx{{x, y}, center_of(y)};
    return mc_pc(draw_of(0), draw_of(1), ctx, reps, seed, workers);
}

std::vector<McEstimate> mc_order_stat_table(int n, const Distribution &x, const Distribution &y, std::size_t reps,
                                            std::uint64_t seed, unsigned workers)
{
    require_reps(reps);
    if (n < 1) {
        throw PreconditionError("table size must be at least 1");
    }
    detail::require_common_center(x.center(), y.center());
    const double theta = y.center();

    struct Counts {
        std::vector<WinCount> per_rank;
        Counts &operator+=(const Counts &o)
        {
            if (per_rank.size() < o.per_rank.size()) {
                per_rank.resize(o.per_rank.size());
            }
            for (std::size_t k = 0; k < o.per_rank.size(); ++k) {
                per_rank[k] += o.per_rank[k];
            }
            return *this;
        }
    };

    const auto counts = parallel_accumulate<Counts>(
        reps,
        [&](std::size_t r, Counts &acc) {
            if (acc.per_rank.empty()) {
                acc.per_rank.resize(static_cast<std::size_t>(n));
            }
            Stream rng = Stream::substream(seed, r);
            auto sample = x.sample(static_cast<std::size_t>(n), rng);
            std::sort(sample.begin(), sample.end());
            const double ey = std::abs(y.draw(rng) - theta);
            for (int i = 0; i < n; ++i) {
                const double ex = std::abs(sample[i] - theta);
                if (ex < ey) {
                    ++acc.per_rank[i].wins;
                } else if (ex == ey) {
                    ++acc.per_rank[i].ties;
                }
            }
        },
        workers);

    std::vector<McEstimate> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(finish(counts.per_rank[i], reps, seed));
    }
    return out;
}

bool agrees(double estimate, const McEstimate &mc, double sigmas)
{
    const double se = std::max(mc.std_err, 1.0 / static_cast<double>(std::max<std::size_t>(mc.reps, 1)));
    return std::abs(estimate - mc.p_hat) <= sigmas * se;
}

} // namespace pcsym
