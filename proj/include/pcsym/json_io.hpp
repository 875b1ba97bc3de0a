#pragma once

#include <json.hpp>

#include "pcsym/distribution.hpp"
#include "pcsym/mc_oracle.hpp"
#include "pcsym/orderstats.hpp"
#include "pcsym/pitman.hpp"
#include "pcsym/rss.hpp"

namespace pcsym {

/// {"family": "...", "center": c, "params": {...}}. Params per family:
///   uniform {"half_width"}, normal {"sigma"}, logistic {"scale"},
///   laplace {"scale"}, beta_generated {"alpha", "parent": <spec>},
///   mixture {"components": [<spec>...], "weights": [...]}.
/// For beta_generated and mixture "center" is optional and must match the
/// parent/components when present.
nlohmann::json to_json(const Distribution &d);
/// Throws InvalidConstruction on schema violations.
Distribution distribution_from_json(const nlohmann::json &j);

nlohmann::json to_json(const PcResult &r);
nlohmann::json to_json(const ConditionReport &r);
nlohmann::json to_json(const PiTable &t);
nlohmann::json to_json(const McEstimate &e);
/// {schemeA, schemeB, parent, reps, seed, p_hat, std_err, ties, low_reps}.
nlohmann::json to_json(const DesignComparison &c);

} // namespace pcsym
