#include "pcsym/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pcsym/error.hpp"
#include "pcsym/json_io.hpp"
#include "pcsym/mc_oracle.hpp"
#include "pcsym/orderstats.hpp"
#include "pcsym/pitman.hpp"
#include "pcsym/rss.hpp"

namespace pcsym::cli {

namespace {

using nlohmann::json;

enum class Format { Json, Csv };

struct CommonOptions {
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<double> tol;
    std::string out_path;

    Format fmt() const { return format == "csv" ? Format::Csv : Format::Json; }
    Tolerance tolerance() const
    {
        Tolerance t;
        if (tol) {
            t.abs = *tol;
            t.rel = std::min(t.rel, *tol);
        }
        return t;
    }
};

// Distinguishes user-input problems (exit 2) from numerical ones.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt10(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Distribution load_distribution(const std::string &arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && arg[first] == '{') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) {
            throw UsageError("cannot open distribution spec '" + arg + "'");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return distribution_from_json(json::parse(text));
    } catch (const json::exception &e) {
        throw UsageError("malformed distribution JSON in '" + arg + "': " + e.what());
    }
}

void add_common(CLI::App *cmd, CommonOptions &o, bool monte_carlo)
{
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", o.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out_path, "Write the report to this path");
    if (monte_carlo) {
        cmd->add_option("--seed", o.seed, "Master seed for Monte Carlo replications");
        cmd->add_option("--reps", o.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
    }
}

std::string csv_rows(const std::vector<std::pair<std::string, std::string>> &rows)
{
    std::string s = "field,value\n";
    for (const auto &[k, v] : rows) {
        s += k + "," + v + "\n";
    }
    return s;
}

void append_pc_rows(std::vector<std::pair<std::string, std::string>> &rows, const std::string &prefix, const PcResult &r)
{
    rows.emplace_back(prefix + "probability", fmt10(r.probability));
    rows.emplace_back(prefix + "method", std::string(to_string(r.method)));
    rows.emplace_back(prefix + "abs_error_estimate", fmt10(r.abs_error_estimate));
    rows.emplace_back(prefix + "closer", std::string(to_string(r.closer)));
}

void append_condition_rows(std::vector<std::pair<std::string, std::string>> &rows, const std::string &prefix,
                           const ConditionReport &r)
{
    rows.emplace_back(prefix + "condition", std::string(to_string(r.id)));
    rows.emplace_back(prefix + "lhs", fmt10(r.lhs));
    rows.emplace_back(prefix + "rhs", fmt10(r.rhs));
    rows.emplace_back(prefix + "margin", fmt10(r.margin));
    rows.emplace_back(prefix + "holds", r.holds ? "true" : "false");
}

std::uint64_t require_seed(const CommonOptions &o, const char *command)
{
    if (!o.seed) {
        throw UsageError(std::string(command) + ": --seed is required for Monte Carlo output");
    }
    return *o.seed;
}

std::string cmd_pc(const std::string &xs, const std::string &ys, const CommonOptions &o)
{
    const auto x = load_distribution(xs);
    const auto y = load_distribution(ys);
    const auto pc = pc_quadrature(x, y, o.tolerance());
    const auto cond = threshold_condition(x, y, o.tolerance());
    const auto dual = dual_threshold_condition(x, y, o.tolerance());
    std::optional<McEstimate> mc;
    if (o.reps || o.seed) {
        mc = mc_pc(x, y, o.reps.value_or(1000000), require_seed(o, "pc"));
    }

    if (o.fmt() == Format::Json) {
        json j = to_json(pc);
        j["threshold_condition"] = to_json(cond);
        j["dual_threshold_condition"] = to_json(dual);
        if (mc) {
            j["monte_carlo"] = to_json(*mc);
        }
        return j.dump(2) + "\n";
    }
    std::vector<std::pair<std::string, std::string>> rows;
    append_pc_rows(rows, "", pc);
    append_condition_rows(rows, "threshold.", cond);
    append_condition_rows(rows, "dual_threshold.", dual);
    if (mc) {
        rows.emplace_back("monte_carlo.p_hat", fmt10(mc->p_hat));
        rows.emplace_back("monte_carlo.std_err", fmt10(mc->std_err));
        rows.emplace_back("monte_carlo.reps", std::to_string(mc->reps));
        rows.emplace_back("monte_carlo.seed", std::to_string(mc->seed));
        rows.emplace_back("monte_carlo.ties", std::to_string(mc->ties));
    }
    return csv_rows(rows);
}

std::string cmd_pi_table(int n, const std::string &xs, const std::string &ys, const CommonOptions &o)
{
    const auto table = order_stat_pc_table(n, load_distribution(xs), load_distribution(ys), o.tolerance());
    return o.fmt() == Format::Json ? to_json(table).dump(2) + "\n" : pi_table_csv(table);
}

std::string cmd_pi_median_seq(int m_max, const std::string &xs, const std::string &ys, const CommonOptions &o)
{
    const auto x = load_distribution(xs);
    const auto y = load_distribution(ys);
    const auto seq = median_pc_sequence(m_max, x, y, o.tolerance());
    if (o.fmt() == Format::Json) {
        json rows = json::array();
        for (std::size_t k = 0; k < seq.size(); ++k) {
            rows.push_back({{"m", k + 1}, {"n", 2 * (k + 1) - 1}, {"pi", seq[k]}});
        }
        return json{{"x", to_json(x)}, {"y", to_json(y)}, {"rows", rows}}.dump(2) + "\n";
    }
    std::string s = "m,pi\n";
    for (std::size_t k = 0; k < seq.size(); ++k) {
        s += std::to_string(k + 1) + "," + fmt10(seq[k]) + "\n";
    }
    return s;
}

std::string cmd_rss_sim(const std::string &a, const std::string &b, const std::string &parent, const CommonOptions &o)
{
    const std::uint64_t seed = require_seed(o, "rss-sim");
    const auto cmp = compare_designs(RssScheme::parse(a), RssScheme::parse(b), load_distribution(parent),
                                     o.reps.value_or(1000000), seed);
    if (o.fmt() == Format::Json) {
        return to_json(cmp).dump(2) + "\n";
    }
    return csv_rows({{"schemeA", cmp.scheme_a.label()},
                     {"schemeB", cmp.scheme_b.label()},
                     {"reps", std::to_string(cmp.reps)},
                     {"seed", std::to_string(cmp.seed)},
                     {"p_hat", fmt10(cmp.result.probability)},
                     {"std_err", fmt10(cmp.result.abs_error_estimate)},
                     {"ties", std::to_string(cmp.result.ties)},
                     {"low_reps", cmp.result.low_reps ? "true" : "false"}});
}

std::string cmd_threshold(const std::string &which, const CommonOptions &o)
{
    if (which != "uniform-normal") {
        throw UsageError("unknown threshold '" + which + "' (available: uniform-normal)");
    }
    const double a0 = uniform_normal_threshold();
    const double h = uniform_normal_h(a0);
    if (o.fmt() == Format::Json) {
        return json{{"threshold", which}, {"a0", a0}, {"h_at_a0", h}}.dump(2) + "\n";
    }
    return csv_rows({{"threshold", which}, {"a0", fmt10(a0)}, {"h_at_a0", fmt10(h)}});
}

std::string cmd_verify(const CommonOptions &o, bool &all_passed)
{
    const std::uint64_t seed = require_seed(o, "verify");
    const auto outcomes = run_verification(o.reps.value_or(200000), seed);
    all_passed = std::all_of(outcomes.begin(), outcomes.end(), [](const auto &p) { return p.passed; });
    if (o.fmt() == Format::Json) {
        json rows = json::array();
        for (const auto &p : outcomes) {
            rows.push_back({{"property", p.name}, {"passed", p.passed}, {"detail", p.detail}});
        }
        return json{{"passed", all_passed}, {"properties", rows}}.dump(2) + "\n";
    }
    std::string s = "property,result,detail\n";
    for (const auto &p : outcomes) {
        s += p.name + "," + (p.passed ? "PASS" : "FAIL") + "," + p.detail + "\n";
    }
    return s;
}

} // namespace

int exit_status_for(const std::exception &e)
{
    if (dynamic_cast<const UsageError *>(&e) || dynamic_cast<const UnsupportedError *>(&e)) {
        return kExitParse;
    }
    // ConvergenceError and Boost.Math evaluation errors (iteration caps).
    if (dynamic_cast<const std::runtime_error *>(&e)) {
        return kExitNonConvergence;
    }
    // Schema, domain and precondition violations.
    return kExitParse;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Pitman-closeness probabilities for symmetric estimators", "pcsym"};
    app.require_subcommand(1, 1);

    CommonOptions o;
    std::string xs, ys, a, b, parent, which;
    int size = 0;

    auto *pc = app.add_subcommand("pc", "PC probability of X against Y with both threshold reports");
    pc->add_option("x", xs, "Distribution spec for X (path or inline JSON)")->required();
    pc->add_option("y", ys, "Distribution spec for Y")->required();
    add_common(pc, o, true);

    auto *table = app.add_subcommand("pi-table", "Order-statistic closeness table for ranks 1..n");
    table->add_option("n", size, "Sample size")->required()->check(CLI::PositiveNumber);
    table->add_option("x", xs, "Parent of the order statistics")->required();
    table->add_option("y", ys, "Competing estimator")->required();
    add_common(table, o, false);

    auto *seq = app.add_subcommand("pi-median-seq", "Sample-median closeness for m = 1..m_max");
    seq->add_option("m_max", size, "Largest half size")->required()->check(CLI::PositiveNumber);
    seq->add_option("x", xs, "Parent of the sample median")->required();
    seq->add_option("y", ys, "Competing estimator")->required();
    add_common(seq, o, false);

    auto *rss = app.add_subcommand("rss-sim", "Monte Carlo comparison of two sampling designs");
    rss->add_option("schemeA", a, "e.g. median:3, randomized-median:4, srs-median:3, srs-mean:4")->required();
    rss->add_option("schemeB", b, "Competing design")->required();
    rss->add_option("parent", parent, "Population distribution spec")->required();
    add_common(rss, o, true);

    auto *threshold = app.add_subcommand("threshold", "Named critical values");
    threshold->add_option("which", which, "uniform-normal")->required();
    add_common(threshold, o, false);

    auto *verify = app.add_subcommand("verify", "Run the invariant suite; exit 1 on any failure");
    add_common(verify, o, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    std::string report;
    bool verified = true;
    try {
        if (pc->parsed()) {
            report = cmd_pc(xs, ys, o);
        } else if (table->parsed()) {
            report = cmd_pi_table(size, xs, ys, o);
        } else if (seq->parsed()) {
            report = cmd_pi_median_seq(size, xs, ys, o);
        } else if (rss->parsed()) {
            report = cmd_rss_sim(a, b, parent, o);
        } else if (threshold->parsed()) {
            report = cmd_threshold(which, o);
        } else if (verify->parsed()) {
            report = cmd_verify(o, verified);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_status_for(e);
    }

    if (o.out_path.empty()) {
        out << report;
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << o.out_path << "'\n";
            return kExitParse;
        }
        file << report;
    }
    return verified ? kExitOk : kExitVerifyFailed;
}

} // namespace pcsym::cli
