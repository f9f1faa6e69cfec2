#pragma once

#include <utility>
#include <vector>

#include "sdof/rational.hpp"
#include "sdof/state.hpp"

namespace sdof {

// Half-plane a*d1 + b*d2 <= c with exact rational coefficients.
struct HalfPlane {
  Rat a{0};
  Rat b{0};
  Rat c{0};
  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

// Inequality list describing a 2-D s.d.o.f. region. Nonnegativity half-planes
// (-d1 <= 0, -d2 <= 0) are always present at the end of the list.
struct RegionSpec {
  std::vector<HalfPlane> planes;
};

// Convex polygon as a counter-clockwise vertex list, starting at the
// lexicographically smallest vertex. No duplicates.
struct Polygon {
  std::vector<RatPoint> vertices;
  bool contains_vertex(const RatPoint& p) const;
};

// The five constraints of the s.d.o.f. region (min(...) bounds expanded into
// two half-planes each) plus nonnegativity:
//   d1 <= (2+2*lp-lpp)/3, d1 <= 1-lnn, same for d2,
//   3d1+d2 <= 2+2*lp, d1+3d2 <= 2+2*lp, d1+d2 <= 2(lp+ld).
RegionSpec region_inequalities(const StatePmf& pmf);

// Exact vertex enumeration of an inequality list (pairwise intersections,
// feasibility filter, dedup, CCW sort).
Polygon vertices_of(const RegionSpec& spec);

Polygon region_vertices(const StatePmf& pmf);

// 2*lp + ld + min(ld, ln); asserts equality with the unsimplified
// min-of-four expression.
Rat sum_sdof(const StatePmf& pmf);

// Minimum (lambda_p, lambda_d) achieving sum s.d.o.f. s in [0, 2].
std::pair<Rat, Rat> min_csit(const Rat& s);

// d.o.f. loss for adding confidentiality; asserts the piecewise closed form
// against (sum d.o.f.) - (sum s.d.o.f.) and the alpha decomposition.
Rat security_cost(const StatePmf& pmf);

// Region of a single fixed CSIT state, canonical orientations only
// (PP, PD, PN, DD, DN, NN).
RegionSpec fixed_state_region(CsitState state);

// Optimal sum s.d.o.f. of one fixed state (PP: 2, PD/PN/DD: 1, DN: 1/2, NN: 0).
Rat fixed_state_sum(CsitState state);

bool contains(const RegionSpec& spec, const RatPoint& p);
bool membership(const StatePmf& pmf, const RatPoint& p);

}  // namespace sdof
