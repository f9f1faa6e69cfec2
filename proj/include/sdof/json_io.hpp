#pragma once

#include <string>

#include "json.hpp"
#include "sdof/composer.hpp"
#include "sdof/metrics.hpp"
#include "sdof/region.hpp"
#include "sdof/state.hpp"

namespace sdof {

using Json = nlohmann::ordered_json;

// Pmf object: {"PD": "1/2", "DP": "1/2"}. Values are rational strings or
// decimals with an exact rational meaning.
StatePmf pmf_from_json(const Json& j);
Json pmf_to_json(const StatePmf& pmf);

// Accepts an inline JSON object or a path to a JSON file.
StatePmf load_pmf(const std::string& spec);

Json region_to_json(const RegionSpec& spec, const Polygon& polygon);
std::string region_to_csv(const Polygon& polygon);

Json allocation_to_json(const Allocation& alloc, const StatePmf& pmf,
                        const std::string& target_name, const RatPoint& target_point);

Json sweep_to_json(const SchemeSweep& sweep, const Rat& expected_d1, const Rat& expected_d2,
                   double tolerance, bool pass);

}  // namespace sdof
