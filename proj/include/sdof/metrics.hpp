#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sdof/transfer.hpp"

namespace sdof {

enum class SymbolGroup { U, V };

struct MiQuery {
  const TransferModel* model = nullptr;
  SymbolGroup group = SymbolGroup::U;
  int side = 1;  // receiver 1 or 2
  double power = 1.0;
};

// I(group; side's stacked outputs | H) in nats for i.i.d. CN(0, P) symbols:
// log det(I + P M M^H) - log det(I + P M_-g M_-g^H). Throws BadGroup when the
// group has no columns.
double gaussian_mi(const MiQuery& q);

struct DofEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;                        // max |fit - data| on the fitted points
  std::vector<std::pair<double, double>> grid;  // (log P, value)
};

// Least-squares line of nats against log P over the top half of the grid
// (small-P points carry the o(log P) bias). Requires >= 4 strictly increasing
// powers spanning >= 4 decades.
DofEstimate dof_estimate(std::span<const std::pair<double, double>> points);

struct DofPair {
  double d1 = 0.0;
  double d2 = 0.0;
};

struct SweepSettings {
  int n_blocks = 200;
  std::vector<double> grid = {1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
  std::uint64_t seed = 1;
};

// Cross-receiver mutual-information slopes (per block, not per slot); both
// components must vanish for a secure scheme.
DofPair leakage_dof(const SchemePlan& plan, const SweepSettings& settings);

// Own-receiver message d.o.f.: MI slope divided by the block length.
DofPair message_dof(const SchemePlan& plan, const SweepSettings& settings);

// One scheme's full verification sweep: per-P mean MI for all four
// (group, side) combinations plus decodability accounting.
struct SchemeSweep {
  SchemeId id;
  SweepSettings settings;
  std::vector<double> mi_u_own;    // mean over blocks, indexed like grid
  std::vector<double> mi_u_cross;
  std::vector<double> mi_v_own;
  std::vector<double> mi_v_cross;
  int decodable_blocks = 0;
  DofPair message;
  DofPair leakage;
};

SchemeSweep sweep_scheme(const SchemePlan& plan, const SweepSettings& settings);

}  // namespace sdof
