#pragma once

#include <map>
#include <vector>

#include "sdof/rational.hpp"
#include "sdof/region.hpp"
#include "sdof/schemes.hpp"
#include "sdof/state.hpp"

namespace sdof {

// One time-sharing component: a constituent scheme running for an omega
// fraction of the total time. `mirrored` swaps the users' roles (the plan
// user-swap involution). `donors` optionally maps a scheme state (post
// mirroring) to the pmf state whose budget it consumes; the donor must
// dominate the scheme's minimal CSIT requirement on that slot. Schemes never
// need donors except where a state with surplus CSIT stands in for a lesser
// one (e.g. leftover DN/ND feeding the third slot of S3_23).
struct AllocationEntry {
  SchemeId scheme;
  bool mirrored = false;
  Rat omega{0};
  std::map<CsitState, CsitState> donors;
};

struct Allocation {
  std::vector<AllocationEntry> entries;
};

// Per-state consumed fraction: sum of omega * (scheme's state fraction),
// accounted against donor states where donors apply.
std::map<CsitState, Rat> state_usage(const Allocation& alloc);

// Sum of omega * scheme pair over all entries, exact.
RatPoint achieved_point(const Allocation& alloc);

struct FeasibilityRow {
  CsitState state;
  Rat used;
  Rat budget;
};

struct Feasibility {
  bool ok = false;
  std::vector<FeasibilityRow> rows;  // all 9 states, canonical order
};

// usage <= budget for every state (exact), total omega <= 1, donor dominance.
Feasibility feasible(const Allocation& alloc, const StatePmf& pmf);

// Named corners of the region. P1/P2 are the Case-A corners; P, Q and S the
// Case-B ones; R the corner when the weighted bounds are irrelevant.
enum class CornerKind { P1, P2, P, Q, S, R };

struct CornerTarget {
  CornerKind kind = CornerKind::P1;
  bool mirrored = false;
};

const char* corner_name(CornerKind kind);

struct Classification {
  bool case_a = false;           // lambda_N <= lambda_D
  bool p_bound_binding = false;  // lambda_DD + 2 lambda_DN >= 2 lambda_NN
  int subcase = 0;               // 1..3, A-sub-cases in Case A, B-sub-cases otherwise
  bool b_relevant = false;       // lambda_NN <= lambda_D
};

Classification classify(const StatePmf& pmf);

// Coordinates of a corner target (before mirroring). Throws
// TargetNotApplicable when the target's case test fails.
RatPoint corner_point(const StatePmf& pmf, CornerKind kind);

Allocation compose_corner(const StatePmf& pmf, const CornerTarget& target);

// Allocation for an arbitrary region vertex (corner targets, the axis
// vertices and the origin).
Allocation compose_vertex(const StatePmf& pmf, const RatPoint& vertex);

// Convex decomposition over at most 3 vertices (lexicographically smallest
// supporting set), merging the vertices' corner allocations.
Allocation compose_point(const StatePmf& pmf, const RatPoint& point);

struct SynergyGap {
  Rat joint;      // optimal joint-encoding sum s.d.o.f.
  Rat separable;  // best per-state encoding + time sharing
};

SynergyGap synergy_gap(const StatePmf& pmf);

}  // namespace sdof
