#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "pcsym/distribution.hpp"
#include "pcsym/error.hpp"
#include "pcsym/incomplete_beta.hpp"
#include "pcsym/json_io.hpp"
#include "pcsym/quadrature.hpp"

using namespace pcsym;

namespace {

std::vector<Distribution> all_families()
{
    const auto n = Distribution::normal(0.3, 1.5);
    return {Distribution::uniform(0.3, 2),
            n,
            Distribution::logistic(0.3, 0.7),
            Distribution::laplace(0.3, 1.2),
            Distribution::beta_generated(2, n),
            Distribution::beta_generated(-0.5, Distribution::uniform(0.3, 1)),
            Distribution::beta_generated(1.5, Distribution::logistic(0.3, 1)),
            make_mixture({Distribution::beta_generated(1, n), Distribution::beta_generated(3, n)}, {0.4, 0.6})};
}

double ks_distance(std::vector<double> xs, const Distribution &d)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double worst = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double f = d.cdf(xs[k]);
        worst = std::max({worst, std::abs(f - k / n), std::abs((k + 1) / n - f)});
    }
    return worst;
}

} // namespace

TEST_CASE("cdf and pdf values of the built-in families")
{
    const auto u = Distribution::uniform(0, 1);
    CHECK(u.cdf(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u.cdf(0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(u.pdf(0.3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u.cdf(-3) == 0.0);
    CHECK(u.cdf(3) == 1.0);
    CHECK(u.pdf(1.5) == 0.0);

    const auto bg = Distribution::beta_generated(1, u);
    CHECK(bg.cdf(0) == doctest::Approx(0.5).epsilon(1e-15));
    // 6 * f(0) * F(0) * (1 - F(0)) with f(0) = 1/2.
    CHECK(bg.pdf(0) == doctest::Approx(0.75).epsilon(1e-14));

    CHECK(Distribution::uniform(0, 2).quantile(0.75) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Distribution::normal(0, 1).quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    for (const auto &d : all_families()) {
        CHECK(d.quantile(0.5) == doctest::Approx(d.center()).epsilon(1e-14));
    }
}

TEST_CASE("symmetry about the center on a grid")
{
    for (const auto &d : all_families()) {
        CAPTURE(std::string(to_string(d.family())));
        for (double x = 0; x <= 8; x += 0.01) {
            CHECK(std::abs(d.cdf(d.center() - x) + d.cdf(d.center() + x) - 1) <= 1e-10);
            CHECK(std::abs(d.pdf(d.center() - x) - d.pdf(d.center() + x)) <= 1e-10);
        }
        CHECK(d.cdf(d.center()) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("quantile inverts cdf on the support interior")
{
    for (const auto &d : all_families()) {
        CAPTURE(std::string(to_string(d.family())));
        for (double p = 0.001; p < 1; p += 0.001) {
            CHECK(std::abs(d.cdf(d.quantile(p)) - p) <= 1e-10);
        }
        for (double x = -3; x <= 3; x += 0.1) {
            const double p = d.cdf(d.center() + x);
            if (p > 1e-6 && p < 1 - 1e-6) {
                CHECK(std::abs(d.quantile(p) - (d.center() + x)) <= 1e-8);
            }
        }
        CHECK_THROWS_AS(d.quantile(0), DomainError);
        CHECK_THROWS_AS(d.quantile(1), DomainError);
        CHECK_THROWS_AS(d.quantile(-0.2), DomainError);
    }
}

TEST_CASE("cdf is nondecreasing and densities integrate to one")
{
    for (const auto &d : all_families()) {
        CAPTURE(std::string(to_string(d.family())));
        double prev = 0;
        for (double x = -10; x <= 10; x += 0.05) {
            const double f = d.cdf(d.center() + x);
            CHECK(f >= prev);
            prev = f;
        }
        // Bounded supports go through x = w sin(phi), which absorbs the arcsine
        // law's edge singularity. Halves keep the Laplace kink on an endpoint.
        double mass = 0;
        if (d.bounded()) {
            const double w = d.half_width();
            auto f = [&](double phi) { return d.pdf(d.center() + w * std::sin(phi)) * w * std::cos(phi); };
            mass = integrate(f, -M_PI / 2, 0, {1e-12, 1e-10}).value + integrate(f, 0, M_PI / 2, {1e-12, 1e-10}).value;
        } else {
            const double w = d.upper_offset(1e-14);
            auto f = [&](double x) { return d.pdf(d.center() + x); };
            mass = integrate(f, -w, 0, {1e-12, 1e-10}).value + integrate(f, 0, w, {1e-12, 1e-10}).value;
        }
        CHECK(std::abs(mass - 1) <= 1e-8);
    }
}

TEST_CASE("beta-generated law with zero exponent is its parent")
{
    for (const auto &parent : {Distribution::normal(1, 2), Distribution::uniform(1, 3), Distribution::laplace(1, 0.5)}) {
        const auto bg = Distribution::beta_generated(0, parent);
        for (double x = -6; x <= 8; x += 0.05) {
            CHECK(std::abs(bg.cdf(x) - parent.cdf(x)) <= 1e-12);
            CHECK(std::abs(bg.pdf(x) - parent.pdf(x)) <= 1e-12);
        }
    }
}

TEST_CASE("beta-generated density uses the 1/B(alpha+1, alpha+1) normalization")
{
    const auto parent = Distribution::logistic(0, 1);
    for (double alpha : {-0.5, 0.5, 1.0, 2.0, 4.0}) {
        const auto bg = Distribution::beta_generated(alpha, parent);
        for (double x = -4; x <= 4; x += 0.25) {
            const double f = parent.cdf(x);
            const double expected =
                parent.pdf(x) * std::pow(f * (1 - f), alpha) / beta_fn(alpha + 1, alpha + 1);
            CHECK(bg.pdf(x) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(bg.cdf(x) == doctest::Approx(reg_inc_beta(alpha + 1, alpha + 1, f)).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(Distribution::beta_generated(-1, parent), InvalidConstruction);
    CHECK_THROWS_AS(Distribution::beta_generated(-2, parent), InvalidConstruction);
}

TEST_CASE("mixtures")
{
    const auto n = Distribution::normal(0, 1);
    SUBCASE("a single component is the component")
    {
        const auto m = make_mixture({Distribution::laplace(0, 2)}, {1.0});
        for (double x = -5; x <= 5; x += 0.1) {
            CHECK(m.pdf(x) == doctest::Approx(Distribution::laplace(0, 2).pdf(x)).epsilon(1e-15));
        }
    }
    SUBCASE("two beta-generated components stay symmetric")
    {
        const auto m = make_mixture({Distribution::beta_generated(1, n), Distribution::beta_generated(2, n)}, {0.5, 0.5});
        for (double x = 0; x <= 5; x += 0.05) {
            CHECK(std::abs(m.pdf(x) - m.pdf(-x)) <= 1e-10);
        }
    }
    SUBCASE("construction errors")
    {
        CHECK_THROWS_AS(make_mixture({n, Distribution::normal(0.5, 1)}, {0.5, 0.5}), InvalidConstruction);
        CHECK_THROWS_AS(make_mixture({n, n}, {0.5, 0.6}), InvalidConstruction);
        CHECK_THROWS_AS(make_mixture({n, n}, {1.2, -0.2}), InvalidConstruction);
        CHECK_THROWS_AS(make_mixture({n}, {0.5, 0.5}), InvalidConstruction);
        CHECK_THROWS_AS(make_mixture({}, {}), InvalidConstruction);
        CHECK_NOTHROW(make_mixture({n, n}, {0.5, 0.5 + 1e-13}));
    }
    SUBCASE("weights are stored and the variance is the weighted sum")
    {
        const auto m = make_mixture({Distribution::normal(0, 1), Distribution::normal(0, 3)}, {0.25, 0.75});
        CHECK(m.variance() == doctest::Approx(0.25 + 0.75 * 9).epsilon(1e-14));
        CHECK(m.mixture_params().weights.size() == 2);
    }
}

TEST_CASE("invalid parameters are rejected")
{
    CHECK_THROWS_AS(Distribution::uniform(0, 0), InvalidConstruction);
    CHECK_THROWS_AS(Distribution::normal(0, -1), InvalidConstruction);
    CHECK_THROWS_AS(Distribution::logistic(0, std::nan("")), InvalidConstruction);
    CHECK_THROWS_AS(Distribution::laplace(std::numeric_limits<double>::infinity(), 1), InvalidConstruction);
}

TEST_CASE("variances")
{
    CHECK(Distribution::uniform(0, 1).variance() == doctest::Approx(1.0 / 3));
    CHECK(Distribution::uniform(0, 2).variance() == doctest::Approx(4.0 / 3));
    CHECK(Distribution::logistic(0, 1).variance() == doctest::Approx(M_PI * M_PI / 3));
    CHECK(Distribution::laplace(0, 1).variance() == doctest::Approx(2.0));
    // Middle order statistic of three uniforms on (-1, 1): Beta(2,2) on (0,1) has variance 1/20.
    CHECK(Distribution::beta_generated(1, Distribution::uniform(0, 1)).variance() ==
          doctest::Approx(4.0 / 20).epsilon(1e-9));
    // Arcsine law on (-1, 1) has variance 1/2.
    CHECK(Distribution::beta_generated(-0.5, Distribution::uniform(0, 1)).variance() ==
          doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("sampling is deterministic and matches the cdf")
{
    for (const auto &d : all_families()) {
        CAPTURE(std::string(to_string(d.family())));
        Stream a(11), b(11);
        CHECK(d.sample(5, a) == d.sample(5, b));
    }
    SUBCASE("uniform, one million draws")
    {
        Stream rng(2024);
        const std::size_t n = 1000000;
        CHECK(ks_distance(Distribution::uniform(0, 1).sample(n, rng), Distribution::uniform(0, 1)) < 1.63 / std::sqrt(n));
    }
    SUBCASE("every family passes a KS test at 10^5")
    {
        std::uint64_t seed = 77;
        for (const auto &d : all_families()) {
            CAPTURE(std::string(to_string(d.family())));
            Stream rng(seed++);
            const std::size_t n = 100000;
            CHECK(ks_distance(d.sample(n, rng), d) < 1.63 / std::sqrt(n));
        }
    }
    SUBCASE("beta-generated normal sample mean is near the center")
    {
        const auto d = Distribution::beta_generated(2, Distribution::normal(0, 1));
        Stream rng(5);
        const std::size_t n = 1000000;
        const auto xs = d.sample(n, rng);
        double mean = 0;
        for (double x : xs) {
            mean += x;
        }
        mean /= n;
        CHECK(std::abs(mean) < 4 * std::sqrt(d.variance() / n));
    }
}

TEST_CASE("two-piece law has its median at the center and skews right")
{
    const TwoPiece x(Distribution::normal(0, 1), 0.8, 1.2);
    CHECK(x.cdf(0) == doctest::Approx(0.5));
    for (double t = 0.1; t < 5; t += 0.1) {
        CHECK(x.cdf(-t) <= 1 - x.cdf(t));
    }
    for (double p = 0.01; p < 1; p += 0.01) {
        CHECK(x.cdf(x.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    Stream rng(3);
    std::size_t below = 0;
    for (int k = 0; k < 100000; ++k) {
        below += x.draw(rng) < 0;
    }
    CHECK(std::abs(below / 1e5 - 0.5) < 4 * 0.5 / std::sqrt(1e5));
}

TEST_CASE("family names parse case-insensitively")
{
    CHECK(family_from_string("Normal") == Family::Normal);
    CHECK(family_from_string("beta-generated") == Family::BetaGenerated);
    CHECK(family_from_string("BETA_GENERATED") == Family::BetaGenerated);
    CHECK_THROWS_AS(family_from_string("cauchy"), InvalidConstruction);
}

TEST_CASE("JSON round trip")
{
    for (const auto &d : all_families()) {
        const auto j = to_json(d);
        const auto back = distribution_from_json(nlohmann::json::parse(j.dump()));
        CHECK(to_json(back) == j);
        for (double x = -3; x <= 3; x += 0.5) {
            CHECK(back.cdf(x) == d.cdf(x));
        }
    }
    using nlohmann::json;
    CHECK_THROWS_AS(distribution_from_json(json{{"family", "normal"}, {"center", 0}}), InvalidConstruction);
    CHECK_THROWS_AS(distribution_from_json(json{{"family", "weibull"}, {"center", 0}, {"params", {{"scale", 1}}}}),
                    InvalidConstruction);
    CHECK_THROWS_AS(distribution_from_json(json{{"family", "uniform"}, {"center", 0}, {"params", {{"half_width", -1}}}}),
                    InvalidConstruction);
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"family":"beta_generated","center":2,
        "params":{"alpha":1,"parent":{"family":"normal","center":0,"params":{"sigma":1}}}})")),
                    InvalidConstruction);
}

TEST_CASE("incomplete beta agrees with the binomial tail")
{
    for (int n = 1; n <= 30; ++n) {
        for (int i = 1; i <= n; ++i) {
            for (double u : {0.01, 0.2, 0.5, 0.77, 0.999}) {
                CHECK(std::abs(reg_inc_beta(i, n - i + 1, u) - binomial_tail(i, n, u)) <= 1e-12);
            }
        }
    }
    CHECK(reg_inc_beta(3, 2, 0.5) == doctest::Approx(5.0 / 16).epsilon(1e-15));
    CHECK(reg_inc_beta_inv(2.5, 2.5, reg_inc_beta(2.5, 2.5, 0.3)) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK_THROWS_AS(reg_inc_beta(0, 1, 0.5), DomainError);
    CHECK_THROWS_AS(reg_inc_beta(1, 1, 1.5), DomainError);
}
