// Command-line front end: regions, time-sharing allocations, Monte-Carlo
// scheme verification and figure-grade sweeps, all emitted as JSON or CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdof/composer.hpp"
#include "sdof/error.hpp"
#include "sdof/json_io.hpp"
#include "sdof/metrics.hpp"
#include "sdof/region.hpp"

namespace {

using sdof::Json;
using sdof::Rat;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) sdof::fail(sdof::Errc::ParseError, "cannot open output file " + out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

struct CommonOpts {
  std::string pmf;
  std::string out;
  std::string format = "json";
};

int cmd_region(const CommonOpts& opts) {
  const sdof::StatePmf pmf = sdof::load_pmf(opts.pmf);
  const sdof::RegionSpec spec = sdof::region_inequalities(pmf);
  const sdof::Polygon poly = sdof::region_vertices(pmf);
  if (opts.format == "csv")
    emit(sdof::region_to_csv(poly), opts.out);
  else
    emit(sdof::region_to_json(spec, poly).dump(2), opts.out);
  return 0;
}

int cmd_synergy(const CommonOpts& opts) {
  const sdof::StatePmf pmf = sdof::load_pmf(opts.pmf);
  const sdof::SynergyGap gap = sdof::synergy_gap(pmf);
  Json j;
  j["pmf"] = sdof::pmf_to_json(pmf);
  j["joint"] = sdof::format_rational(gap.joint);
  j["separable"] = sdof::format_rational(gap.separable);
  emit(j.dump(2), opts.out);
  return 0;
}

int cmd_compose(const CommonOpts& opts, const std::string& target, bool mirror,
                const std::string& point) {
  const sdof::StatePmf pmf = sdof::load_pmf(opts.pmf);
  sdof::Allocation alloc;
  sdof::RatPoint achieved_target;
  std::string name;
  if (!point.empty()) {
    const auto comma = point.find(',');
    if (comma == std::string::npos)
      sdof::fail(sdof::Errc::ParseError, "--point expects \"d1,d2\"");
    achieved_target = {sdof::parse_rational(point.substr(0, comma)),
                       sdof::parse_rational(point.substr(comma + 1))};
    alloc = sdof::compose_point(pmf, achieved_target);
    name = "point";
  } else {
    sdof::CornerTarget t;
    bool found = false;
    for (sdof::CornerKind kind :
         {sdof::CornerKind::P1, sdof::CornerKind::P2, sdof::CornerKind::P,
          sdof::CornerKind::Q, sdof::CornerKind::S, sdof::CornerKind::R}) {
      if (sdof::corner_name(kind) == target) {
        t.kind = kind;
        found = true;
        break;
      }
    }
    if (!found) sdof::fail(sdof::Errc::ParseError, "unknown target '" + target + "'");
    t.mirrored = mirror;
    alloc = sdof::compose_corner(pmf, t);
    achieved_target = sdof::corner_point(pmf, t.kind);
    if (mirror) achieved_target = sdof::swapped(achieved_target);
    name = target + (mirror ? "'" : "");
  }
  emit(sdof::allocation_to_json(alloc, pmf, name, achieved_target).dump(2), opts.out);
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& scheme, int n,
               const sdof::SweepSettings& settings, double tolerance) {
  const sdof::SchemeId id = sdof::parse_scheme(scheme, n);
  if (id.kind == sdof::SchemeKind::S3_1 && id.n < 1)
    sdof::fail(sdof::Errc::InvalidParameter, "S3_1 needs --n >= 1");
  const sdof::SchemePlan plan = sdof::build_plan(id);
  const sdof::SchemeSweep sweep = sdof::sweep_scheme(plan, settings);
  const auto [d1, d2] = sdof::expected_pair(id);
  const bool pass =
      sweep.decodable_blocks == settings.n_blocks &&
      std::abs(sweep.message.d1 - sdof::rat_to_double(d1)) <= tolerance &&
      std::abs(sweep.message.d2 - sdof::rat_to_double(d2)) <= tolerance &&
      std::abs(sweep.leakage.d1) <= tolerance && std::abs(sweep.leakage.d2) <= tolerance;
  emit(sdof::sweep_to_json(sweep, d1, d2, tolerance, pass).dump(2), opts.out);
  return pass ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opts, const std::string& figure, int resolution,
              const std::vector<std::string>& sums) {
  std::string csv;
  if (figure == "sum_surface") {
    csv = "lambda_p,lambda_d,sum_sdof\n";
    for (int i = 0; i <= resolution; ++i) {
      for (int j = 0; j + i <= resolution; ++j) {
        const Rat lp(i, resolution), ld(j, resolution);
        const Rat rest = Rat(1) - lp - ld;
        const auto pmf = sdof::StatePmf::validate(
            {{sdof::kPP, lp}, {sdof::kDD, ld}, {sdof::kNN, rest}});
        csv += sdof::format_rational(lp) + "," + sdof::format_rational(ld) + "," +
               sdof::format_rational(sdof::sum_sdof(pmf)) + "\n";
      }
    }
  } else if (figure == "tradeoff") {
    csv = "s,lambda_p,lambda_d,is_min_corner\n";
    for (const std::string& stext : sums) {
      const Rat s = sdof::parse_rational(stext);
      const auto [cp, cd] = sdof::min_csit(s);
      // Sloped part of the frontier: 2(lambda_p + lambda_d) = s.
      for (int i = 0; i <= resolution; ++i) {
        const Rat lo = s > Rat(1) ? s - Rat(1) : Rat(0);
        const Rat lp = lo + Rat(i, resolution) * (s / Rat(2) - lo);
        const Rat ld = s / Rat(2) - lp;
        const bool corner = lp == cp && ld == cd;
        csv += sdof::format_rational(s) + "," + sdof::format_rational(lp) + "," +
               sdof::format_rational(ld) + "," + (corner ? "1" : "0") + "\n";
      }
      // Vertical part (lambda_p pinned, extra delayed CSIT is redundant).
      if (s > Rat(1)) {
        for (int i = 1; i <= resolution; ++i) {
          const Rat ld = (Rat(1) - s / Rat(2)) +
                         Rat(i, resolution) * ((Rat(2) - s) - (Rat(1) - s / Rat(2)));
          csv += sdof::format_rational(s) + "," + sdof::format_rational(s - Rat(1)) + "," +
                 sdof::format_rational(ld) + ",0\n";
        }
      }
    }
  } else if (figure == "cost") {
    csv = "alpha,normalized_loss\n";
    for (int i = 0; i <= resolution; ++i) {
      const Rat alpha(i, resolution);
      Rat g;
      if (alpha <= Rat(1, 3))
        g = Rat(1) - alpha;
      else if (alpha <= Rat(1, 2))
        g = Rat(4, 3) - Rat(2) * alpha;
      else
        g = Rat(1, 3);
      csv += sdof::format_rational(alpha) + "," + sdof::format_rational(g) + "\n";
    }
  } else {
    sdof::fail(sdof::Errc::ParseError, "unknown figure '" + figure + "'");
  }
  emit(csv, opts.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure-d.o.f. regions, constituent schemes and time-sharing "
               "composition for the two-user MISO broadcast channel with "
               "confidential messages under alternating CSIT"};
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON/INI config file with the same keys");

  CommonOpts common;
  std::string target = "P2", point, scheme = "S2", figure = "sum_surface";
  bool mirror = false;
  int n = 1, resolution = 20;
  double tolerance = 0.05;
  sdof::SweepSettings settings;
  std::vector<std::string> sums{"1/2", "1", "4/3", "3/2", "2"};
  std::vector<double> grid;

  auto add_common = [&](CLI::App* cmd, bool needs_pmf) {
    if (needs_pmf)
      cmd->add_option("--pmf", common.pmf, "pmf as inline JSON or a file path")
          ->required();
    cmd->add_option("--out", common.out, "output path (default: stdout)");
    cmd->add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* region = app.add_subcommand("region", "Theorem-1 region of a pmf");
  add_common(region, true);

  CLI::App* compose = app.add_subcommand("compose", "time-sharing allocation");
  add_common(compose, true);
  compose->add_option("--target", target, "corner target: P1, P2, P, Q, S, R");
  compose->add_flag("--mirror", mirror, "user-swapped corner");
  compose->add_option("--point", point, "arbitrary region point \"d1,d2\"");

  CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo scheme verification");
  add_common(verify, false);
  verify->add_option("--scheme", scheme, "scheme id (e.g. S1_32)")->required();
  verify->add_option("--n", n, "block parameter for S3_1");
  verify->add_option("--blocks", settings.n_blocks, "channel blocks per power");
  verify->add_option("--seed", settings.seed, "RNG seed");
  verify->add_option("--grid", grid, "power grid (linear scale)");
  verify->add_option("--tolerance", tolerance, "d.o.f. tolerance");

  CLI::App* sweep = app.add_subcommand("sweep", "figure data grids (CSV)");
  add_common(sweep, false);
  sweep->add_option("--figure", figure, "sum_surface, tradeoff or cost");
  sweep->add_option("--resolution", resolution, "grid resolution")->check(CLI::Range(2, 100000));
  sweep->add_option("--sums", sums, "sum s.d.o.f. values for tradeoff");

  CLI::App* synergy = app.add_subcommand("synergy", "joint vs separable sum s.d.o.f.");
  add_common(synergy, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (region->parsed()) return cmd_region(common);
    if (compose->parsed()) return cmd_compose(common, target, mirror, point);
    if (verify->parsed()) {
      if (!grid.empty()) settings.grid = grid;
      return cmd_verify(common, scheme, n, settings, tolerance);
    }
    if (sweep->parsed()) return cmd_sweep(common, figure, resolution, sums);
    if (synergy->parsed()) return cmd_synergy(common);
  } catch (const sdof::SdofError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
