#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pcsym/cli.hpp"
#include "pcsym/error.hpp"
#include "pcsym/mc_oracle.hpp"
#include "pcsym/orderstats.hpp"
#include "pcsym/pitman.hpp"

namespace pcsym::cli {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<Distribution> sample_laws()
{
    const auto n = Distribution::normal(0, 1);
    return {Distribution::uniform(0, 1),
            n,
            Distribution::normal(0, 2),
            Distribution::logistic(0, 1),
            Distribution::laplace(0, 1),
            Distribution::beta_generated(2, n),
            make_mixture({Distribution::beta_generated(1, n), Distribution::beta_generated(3, n)}, {0.4, 0.6})};
}

PropertyOutcome check(const std::string &name, const std::function<std::string(bool &)> &body)
{
    PropertyOutcome o{name, true, ""};
    try {
        o.detail = body(o.passed);
    } catch (const std::exception &e) {
        o.passed = false;
        o.detail = std::string("exception: ") + e.what();
    }
    return o;
}

} // namespace

std::vector<PropertyOutcome> run_verification(std::size_t reps, std::uint64_t seed)
{
    const auto laws = sample_laws();
    std::vector<PropertyOutcome> out;

    out.push_back(check("cdf_symmetry", [&](bool &ok) {
        double worst = 0;
        for (const auto &d : laws) {
            for (double x = 0; x <= 6; x += 0.05) {
                worst = std::max(worst, std::abs(d.cdf(d.center() - x) + d.cdf(d.center() + x) - 1));
            }
        }
        ok = worst <= 1e-10;
        return "max deviation " + num(worst);
    }));

    out.push_back(check("quantile_round_trip", [&](bool &ok) {
        double worst = 0;
        for (const auto &d : laws) {
            for (double p = 0.01; p < 1; p += 0.01) {
                worst = std::max(worst, std::abs(d.cdf(d.quantile(p)) - p));
            }
        }
        ok = worst <= 1e-8;
        return "max deviation " + num(worst);
    }));

    out.push_back(check("exchangeability", [&](bool &ok) {
        double worst = 0;
        for (const auto &d : laws) {
            worst = std::max(worst, std::abs(pc_quadrature(d, d).probability - 0.5));
        }
        ok = worst <= 1e-8;
        return "max |PC(X,X) - 1/2| " + num(worst);
    }));

    out.push_back(check("complement_and_condition_equivalence", [&](bool &ok) {
        double worst = 0;
        int disagreements = 0;
        for (const auto &x : laws) {
            for (const auto &y : laws) {
                const double p = pc_quadrature(x, y).probability;
                worst = std::max(worst, std::abs(p + pc_quadrature(y, x).probability - 1));
                const Verdict v = classify(p);
                if (threshold_condition(x, y).verdict != v || dual_threshold_condition(x, y).verdict != v) {
                    ++disagreements;
                }
            }
        }
        ok = worst <= 2e-8 && disagreements == 0;
        return "max complement error " + num(worst) + ", verdict disagreements " + std::to_string(disagreements);
    }));

    out.push_back(check("order_statistic_symmetry_unimodality", [&](bool &ok) {
        double asym = 0;
        bool unimodal = true;
        const auto &x = laws[1];
        const auto &y = laws[3];
        for (int n = 2; n <= 8; ++n) {
            const auto t = order_stat_pc_table(n, x, y);
            for (int i = 0; i < n; ++i) {
                asym = std::max(asym, std::abs(t.values[i] - t.values[n - 1 - i]));
            }
            for (int i = 1; i < (n + 1) / 2; ++i) {
                unimodal = unimodal && t.values[i] >= t.values[i - 1] - 1e-10;
            }
        }
        ok = asym <= 1e-10 && unimodal;
        return "max asymmetry " + num(asym) + (unimodal ? ", unimodal" : ", not unimodal");
    }));

    out.push_back(check("median_monotonicity", [&](bool &ok) {
        const auto seq = median_pc_sequence(6, laws[4], laws[4]);
        ok = std::abs(seq[0] - 0.5) <= 1e-8;
        for (std::size_t k = 1; k < seq.size(); ++k) {
            ok = ok && seq[k] - seq[k - 1] > 1e-9;
        }
        return "first " + num(seq[0]) + ", last " + num(seq.back());
    }));

    out.push_back(check("closed_form_consistency", [&](bool &ok) {
        double worst = 0;
        for (int m = 1; m <= 5; ++m) {
            worst = std::max(worst,
                             std::abs(order_stat_pc(m, 2 * m - 1, laws[3], laws[3]).probability - beta_generated_pc(m - 1)));
        }
        ok = worst <= 1e-8;
        return "max deviation " + num(worst);
    }));

    out.push_back(check("uniform_normal_threshold", [&](bool &ok) {
        const double a0 = uniform_normal_threshold();
        ok = std::abs(a0 - 1.47) <= 0.01 && std::abs(uniform_normal_h(a0)) <= 1e-12;
        return "a0 " + num(a0);
    }));

    out.push_back(check("randomization_threshold", [&](bool &ok) {
        int bad = 0;
        for (double a : {0.05, 0.1, 0.25, 0.5}) {
            for (double b : {0.05, 0.2, 0.5}) {
                const double cut = max_randomization(a, b);
                for (double z : {0.0, 0.25 * cut, cut, std::min(1.0, cut + 0.01), 1.0}) {
                    const bool wins = pc_randomized(0.5 + a, 0.5 - b, z) >= 0.5 - 1e-15;
                    if (wins != (z <= cut)) {
                        ++bad;
                    }
                }
            }
        }
        ok = bad == 0;
        return std::to_string(bad) + " grid points violate the cut";
    }));

    out.push_back(check("monte_carlo_agreement", [&](bool &ok) {
        const auto a = Distribution::uniform(0, 0.5);
        const auto b = Distribution::uniform(0, 1);
        const double exact = pc_quadrature(a, b).probability;
        const auto mc1 = mc_pc(Law{a}, Law{b}, reps, seed);
        const auto mc2 = mc_pc(order_statistic(laws[1], 2, 3), draw_of(0), McContext{{Law{laws[1]}}, 0}, reps, seed + 1);
        ok = agrees(exact, mc1) && agrees(beta_generated_pc(1), mc2);
        return "uniform pair " + num(mc1.p_hat) + " vs " + num(exact) + ", median of 3 " + num(mc2.p_hat) +
               " vs " + num(beta_generated_pc(1));
    }));

    out.push_back(check("seed_determinism", [&](bool &ok) {
        const auto r1 = mc_pc(Law{laws[3]}, Law{laws[4]}, 20000, seed, 1);
        const auto r2 = mc_pc(Law{laws[3]}, Law{laws[4]}, 20000, seed, 4);
        ok = r1.p_hat == r2.p_hat && r1.ties == r2.ties;
        return "p_hat " + num(r1.p_hat);
    }));

    return out;
}

} // namespace pcsym::cli
