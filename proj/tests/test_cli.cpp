#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcsym/cli.hpp"
#include "pcsym/error.hpp"
#include "pcsym/json_io.hpp"

using nlohmann::json;
using pcsym::cli::run;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

const std::string kUnit = R"({"family":"uniform","center":0,"params":{"half_width":1}})";
const std::string kDouble = R"({"family":"uniform","center":0,"params":{"half_width":2}})";
const std::string kNormal = R"({"family":"normal","center":0,"params":{"sigma":1}})";
const std::string kWide = R"({"family":"normal","center":0,"params":{"sigma":2}})";

std::filesystem::path temp_file(const std::string &name, const std::string &content)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_CASE("threshold command")
{
    const auto r = call({"threshold", "uniform-normal"});
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(std::abs(j["a0"].get<double>() - 1.47) <= 0.01);
    CHECK(std::abs(j["h_at_a0"].get<double>()) <= 1e-12);
    CHECK(call({"threshold", "uniform-logistic"}).status == 2);
}

TEST_CASE("pc command from files and inline JSON")
{
    const auto x = temp_file("pcsym_unit.json", kUnit);
    const auto y = temp_file("pcsym_double.json", kDouble);
    const auto from_files = call({"pc", x.string(), y.string(), "--format", "json"});
    REQUIRE(from_files.status == 0);
    const auto j = json::parse(from_files.out);
    CHECK(j["probability"].get<double>() == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(j["method"] == "quadrature");
    CHECK(j["closer"] == "first_closer");
    CHECK(j["threshold_condition"]["condition"] == "threshold_truncated");
    CHECK(j["dual_threshold_condition"]["holds"] == true);
    CHECK_FALSE(j.contains("monte_carlo"));

    const auto inline_json = call({"pc", kUnit, kDouble});
    CHECK(inline_json.out == from_files.out);

    const auto csv = call({"pc", kUnit, kDouble, "--format", "csv"});
    REQUIRE(csv.status == 0);
    CHECK(lines(csv.out).at(0) == "field,value");
    CHECK(lines(csv.out).at(1) == "probability,0.75");

    const auto mc = call({"pc", kUnit, kDouble, "--seed", "3", "--reps", "20000"});
    REQUIRE(mc.status == 0);
    const auto jm = json::parse(mc.out);
    CHECK(jm["monte_carlo"]["reps"] == 20000);
    CHECK(jm["monte_carlo"]["seed"] == 3);
}

TEST_CASE("pi-table and median sequence")
{
    const auto t = call({"pi-table", "4", kNormal, kNormal, "--format", "csv"});
    REQUIRE(t.status == 0);
    const auto rows = lines(t.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "i,pi");
    auto value = [&](int k) { return rows[k].substr(rows[k].find(',') + 1); };
    CHECK(value(2) == value(3));
    CHECK(value(1) == value(4));

    const auto j = json::parse(call({"pi-table", "3", kNormal, kWide}).out);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0]["pi"] == j["rows"][2]["pi"]);

    const auto s = call({"pi-median-seq", "4", kNormal, kNormal, "--format", "csv"});
    REQUIRE(s.status == 0);
    const auto srows = lines(s.out);
    REQUIRE(srows.size() == 5);
    CHECK(srows[1] == "1,0.5");
    CHECK(srows[2] == "2,0.625");
}

TEST_CASE("rss-sim is reproducible byte for byte")
{
    const std::vector<std::string> args{"rss-sim", "median:3", "srs-median:3", kNormal, "--reps", "20000", "--seed", "9"};
    const auto a = call(args);
    const auto b = call(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    for (const char *key : {"schemeA", "schemeB", "parent", "reps", "seed", "p_hat", "std_err", "ties"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["schemeA"] == "median:3");
    CHECK(j["low_reps"] == false);
    CHECK(call({"rss-sim", "median:3", "srs-median:3", kNormal, "--reps", "20000", "--seed", "10"}).out != a.out);
}

TEST_CASE("JSON output round-trips through the distribution schema")
{
    const auto j = json::parse(call({"pi-table", "2", kNormal, kWide}).out);
    const auto y = pcsym::distribution_from_json(j["y"]);
    CHECK(y.scale() == 2);
    CHECK(pcsym::to_json(y) == j["y"]);
}

TEST_CASE("seed is required for Monte Carlo commands")
{
    const auto r = call({"rss-sim", "median:3", "srs-median:3", kNormal, "--reps", "20000"});
    CHECK(r.status == 2);
    CHECK(r.err.find("--seed") != std::string::npos);
    CHECK(call({"verify"}).status == 2);
    CHECK(call({"pc", kUnit, kDouble, "--reps", "20000"}).status == 2);
}

TEST_CASE("parse and input errors exit with status 2")
{
    CHECK(call({}).status == 2);
    CHECK(call({"frobnicate"}).status == 2);
    CHECK(call({"pc", kUnit}).status == 2);
    CHECK(call({"pc", kUnit, kDouble, "--format", "xml"}).status == 2);
    CHECK(call({"pc", "{not json", kDouble}).status == 2);
    CHECK(call({"pc", "/nonexistent/spec.json", kDouble}).status == 2);
    CHECK(call({"pc", R"({"family":"cauchy","center":0,"params":{}})", kDouble}).status == 2);
    CHECK(call({"pc", kUnit, R"({"family":"normal","center":1,"params":{"sigma":1}})"}).status == 2);
    CHECK(call({"pi-table", "0", kNormal, kNormal}).status == 2);
    CHECK(call({"pi-table", "3", kNormal, kDouble}).status == 2);
    CHECK(call({"rss-sim", "median:4", "srs-median:3", kNormal, "--seed", "1"}).status == 2);
    CHECK(call({"rss-sim", "median:3", "srs-median:3", kNormal, "--seed", "1", "--reps", "-5"}).status == 2);
}

TEST_CASE("error classes map to exit statuses")
{
    using namespace pcsym;
    CHECK(cli::exit_status_for(ConvergenceError("x")) == cli::kExitNonConvergence);
    CHECK(cli::exit_status_for(DomainError("x")) == cli::kExitParse);
    CHECK(cli::exit_status_for(PreconditionError("x")) == cli::kExitParse);
    CHECK(cli::exit_status_for(InvalidConstruction("x")) == cli::kExitParse);
    CHECK(cli::exit_status_for(UnsupportedError("x")) == cli::kExitParse);
}

TEST_CASE("--out writes the report to a file")
{
    const auto path = std::filesystem::temp_directory_path() / "pcsym_report.csv";
    std::filesystem::remove(path);
    const auto r = call({"pi-table", "2", kNormal, kNormal, "--format", "csv", "--out", path.string()});
    REQUIRE(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == call({"pi-table", "2", kNormal, kNormal, "--format", "csv"}).out);
}

TEST_CASE("help exits cleanly")
{
    const auto r = call({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("pi-table") != std::string::npos);
}

TEST_CASE("verify command")
{
    const auto r = call({"verify", "--seed", "2", "--reps", "20000", "--format", "csv"});
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() > 5);
    CHECK(rows[0] == "property,result,detail");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].find(",PASS,") != std::string::npos);
    }
}
