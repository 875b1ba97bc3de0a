#include "pcsym/json_io.hpp"

#include <cmath>
#include <string>

#include "pcsym/error.hpp"

namespace pcsym {

using nlohmann::json;

namespace {

double number(const json &obj, const char *key)
{
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
        throw InvalidConstruction(std::string("expected numeric field '") + key + "'");
    }
    return obj.at(key).get<double>();
}

const json &params_of(const json &j)
{
    if (!j.contains("params") || !j.at("params").is_object()) {
        throw InvalidConstruction("distribution spec needs a 'params' object");
    }
    return j.at("params");
}

} // namespace

json to_json(const Distribution &d)
{
    json j;
    j["family"] = std::string(to_string(d.family()));
    j["center"] = d.center();
    switch (d.family()) {
    case Family::Uniform: j["params"] = {{"half_width", d.scale()}}; break;
    case Family::Normal: j["params"] = {{"sigma", d.scale()}}; break;
    case Family::Logistic:
    case Family::Laplace: j["params"] = {{"scale", d.scale()}}; break;
    case Family::BetaGenerated: {
        const auto &p = d.beta_generated_params();
        j["params"] = {{"alpha", p.alpha}, {"parent", to_json(*p.parent)}};
        break;
    }
    case Family::Mixture: {
        const auto &p = d.mixture_params();
        json comps = json::array();
        for (const auto &c : p.components) {
            comps.push_back(to_json(c));
        }
        j["params"] = {{"components", comps}, {"weights", p.weights}};
        break;
    }
    }
    return j;
}

Distribution distribution_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
        throw InvalidConstruction("distribution spec needs a string 'family'");
    }
    const Family family = family_from_string(j.at("family").get<std::string>());
    const json &params = params_of(j);
    const bool has_center = j.contains("center");
    if (has_center && !j.at("center").is_number()) {
        throw InvalidConstruction("'center' must be a number");
    }

    auto check_center = [&](const Distribution &d) {
        if (has_center && std::abs(j.at("center").get<double>() - d.center()) > 1e-12 * std::max(1.0, std::abs(d.center()))) {
            throw InvalidConstruction("'center' does not match the nested distributions");
        }
        return d;
    };

    switch (family) {
    case Family::Uniform: return Distribution::uniform(number(j, "center"), number(params, "half_width"));
    case Family::Normal: return Distribution::normal(number(j, "center"), number(params, "sigma"));
    case Family::Logistic: return Distribution::logistic(number(j, "center"), number(params, "scale"));
    case Family::Laplace: return Distribution::laplace(number(j, "center"), number(params, "scale"));
    case Family::BetaGenerated: {
        if (!params.contains("parent")) {
            throw InvalidConstruction("beta_generated needs a 'parent'");
        }
        return check_center(Distribution::beta_generated(number(params, "alpha"), distribution_from_json(params.at("parent"))));
    }
    case Family::Mixture: {
        if (!params.contains("components") || !params.at("components").is_array() || !params.contains("weights")
            || !params.at("weights").is_array()) {
            throw InvalidConstruction("mixture needs 'components' and 'weights' arrays");
        }
        std::vector<Distribution> comps;
        for (const auto &c : params.at("components")) {
            comps.push_back(distribution_from_json(c));
        }
        std::vector<double> weights;
        for (const auto &w : params.at("weights")) {
            if (!w.is_number()) {
                throw InvalidConstruction("mixture weights must be numbers");
            }
            weights.push_back(w.get<double>());
        }
        return check_center(make_mixture(std::move(comps), std::move(weights)));
    }
    }
    throw InvalidConstruction("unhandled family");
}

json to_json(const PcResult &r)
{
    json j{{"probability", r.probability},
           {"method", std::string(to_string(r.method))},
           {"abs_error_estimate", r.abs_error_estimate},
           {"closer", std::string(to_string(r.closer))}};
    if (r.method == Method::MonteCarlo) {
        j["reps"] = r.reps;
        j["ties"] = r.ties;
        j["low_reps"] = r.low_reps;
    }
    return j;
}

json to_json(const ConditionReport &r)
{
    return {{"condition", std::string(to_string(r.id))},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"margin", r.margin},
            {"holds", r.holds},
            {"verdict", std::string(to_string(r.verdict))}};
}

json to_json(const PiTable &t)
{
    json rows = json::array();
    for (int i = 1; i <= t.n; ++i) {
        rows.push_back({{"i", i}, {"pi", t.values[i - 1]}});
    }
    return {{"n", t.n}, {"x", to_json(t.x)}, {"y", to_json(t.y)}, {"max_abs_error", t.max_abs_error}, {"rows", rows}};
}

json to_json(const McEstimate &e)
{
    return {{"p_hat", e.p_hat}, {"std_err", e.std_err}, {"reps", e.reps}, {"seed", e.seed}, {"ties", e.ties}};
}

json to_json(const DesignComparison &c)
{
    return {{"schemeA", c.scheme_a.label()},
            {"schemeB", c.scheme_b.label()},
            {"parent", to_json(c.parent)},
            {"reps", c.reps},
            {"seed", c.seed},
            {"p_hat", c.result.probability},
            {"std_err", c.result.abs_error_estimate},
            {"ties", c.result.ties},
            {"low_reps", c.result.low_reps}};
}

} // namespace pcsym
