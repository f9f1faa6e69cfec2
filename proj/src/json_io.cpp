#include "sdof/json_io.hpp"

#include <fstream>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

namespace {

// Doubles are dyadic rationals, so the conversion is exact; non-dyadic
// decimals must be passed as strings ("1/10"), not JSON numbers.
Rat rat_from_double(double value) {
  if (value == 0.0) return Rat(0);
  long long den = 1;
  double scaled = value;
  int guard = 0;
  while (scaled != static_cast<double>(static_cast<long long>(scaled))) {
    scaled *= 2;
    den *= 2;
    if (++guard > 60)
      fail(Errc::ParseError, "numeric pmf value is not a small dyadic rational; "
                             "pass it as a string like \"1/10\"");
  }
  return Rat(static_cast<long long>(scaled), den);
}

}  // namespace

StatePmf pmf_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::ParseError, "pmf must be a JSON object");
  std::map<CsitState, Rat> raw;
  for (const auto& [key, value] : j.items()) {
    const CsitState state = parse_state(key);
    Rat mass;
    if (value.is_string())
      mass = parse_rational(value.get<std::string>());
    else if (value.is_number())
      mass = rat_from_double(value.get<double>());
    else
      fail(Errc::ParseError, "pmf value for " + key + " must be a string or number");
    raw[state] += mass;
  }
  return StatePmf::validate(raw);
}

Json pmf_to_json(const StatePmf& pmf) {
  Json j = Json::object();
  for (const auto& [state, mass] : pmf.support()) j[state_code(state)] = format_rational(mass);
  return j;
}

StatePmf load_pmf(const std::string& spec) {
  std::string text = spec;
  if (spec.find('{') == std::string::npos) {
    std::ifstream in(spec);
    if (!in) fail(Errc::ParseError, "cannot open pmf file '" + spec + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::ParseError, "invalid pmf JSON");
  return pmf_from_json(j);
}

Json region_to_json(const RegionSpec& spec, const Polygon& polygon) {
  Json j;
  Json ineqs = Json::array();
  for (const HalfPlane& h : spec.planes) {
    ineqs.push_back({{"a", format_rational(h.a)},
                     {"b", format_rational(h.b)},
                     {"c", format_rational(h.c)}});
  }
  j["inequalities"] = ineqs;
  Json verts = Json::array();
  for (const RatPoint& p : polygon.vertices)
    verts.push_back({format_rational(p.x), format_rational(p.y)});
  j["vertices"] = verts;
  return j;
}

std::string region_to_csv(const Polygon& polygon) {
  std::string out = "d1,d2\n";
  for (const RatPoint& p : polygon.vertices) {
    out += std::to_string(rat_to_double(p.x)) + "," + std::to_string(rat_to_double(p.y)) +
           "\n";
  }
  return out;
}

Json allocation_to_json(const Allocation& alloc, const StatePmf& pmf,
                        const std::string& target_name, const RatPoint& target_point) {
  Json j;
  j["target"] = target_name;
  const RatPoint achieved = achieved_point(alloc);
  j["achieved"] = {format_rational(achieved.x), format_rational(achieved.y)};
  j["point"] = {format_rational(target_point.x), format_rational(target_point.y)};
  Json entries = Json::array();
  for (const AllocationEntry& e : alloc.entries) {
    Json je;
    je["scheme"] = scheme_name(e.scheme);
    if (e.mirrored) je["mirrored"] = true;
    je["omega"] = format_rational(e.omega);
    if (!e.donors.empty()) {
      Json donors = Json::object();
      for (const auto& [needed, donor] : e.donors)
        donors[state_code(needed)] = state_code(donor);
      je["donors"] = donors;
    }
    entries.push_back(je);
  }
  j["entries"] = entries;
  const Feasibility f = feasible(alloc, pmf);
  Json usage = Json::object();
  for (const FeasibilityRow& row : f.rows) {
    if (row.used == Rat(0) && row.budget == Rat(0)) continue;
    usage[state_code(row.state)] =
        format_rational(row.used) + " of " + format_rational(row.budget);
  }
  j["usage"] = usage;
  j["feasible"] = f.ok;
  return j;
}

Json sweep_to_json(const SchemeSweep& sweep, const Rat& expected_d1, const Rat& expected_d2,
                   double tolerance, bool pass) {
  Json j;
  j["scheme"] = scheme_name(sweep.id);
  j["seed"] = sweep.settings.seed;
  j["blocks"] = sweep.settings.n_blocks;
  j["grid"] = sweep.settings.grid;
  Json per_p = Json::array();
  for (std::size_t i = 0; i < sweep.settings.grid.size(); ++i) {
    per_p.push_back({{"p", sweep.settings.grid[i]},
                     {"mi_u_own", sweep.mi_u_own[i]},
                     {"mi_u_cross", sweep.mi_u_cross[i]},
                     {"mi_v_own", sweep.mi_v_own[i]},
                     {"mi_v_cross", sweep.mi_v_cross[i]}});
  }
  j["per_p"] = per_p;
  j["decodable_rate"] =
      static_cast<double>(sweep.decodable_blocks) / sweep.settings.n_blocks;
  j["message_dof"] = {sweep.message.d1, sweep.message.d2};
  j["leakage_dof"] = {sweep.leakage.d1, sweep.leakage.d2};
  j["expected_pair"] = {format_rational(expected_d1), format_rational(expected_d2)};
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

}  // namespace sdof
