#include <array>
#include <map>
#include <random>

#include "doctest.h"
#include "sdof/error.hpp"
#include "sdof/region.hpp"

using namespace sdof;

namespace {

StatePmf pmf_of(std::initializer_list<std::pair<CsitState, Rat>> init) {
  std::map<CsitState, Rat> m;
  for (const auto& [s, r] : init) m[s] = r;
  return StatePmf::validate(m);
}

// Random symmetric pmf with small integer weights.
StatePmf random_pmf(std::mt19937_64& gen) {
  std::array<long long, 6> w{};
  for (auto& x : w) x = static_cast<long long>(gen() % 7);
  // weights: PP, PD (x2), PN (x2), DD, DN (x2), NN
  const long long total = w[0] + 2 * w[1] + 2 * w[2] + w[3] + 2 * w[4] + w[5];
  if (total == 0) return pmf_of({{kDD, Rat(1)}});
  std::map<CsitState, Rat> raw;
  raw[kPP] = Rat(w[0], total);
  raw[kPD] = raw[kDP] = Rat(w[1], total);
  raw[kPN] = raw[kNP] = Rat(w[2], total);
  raw[kDD] = Rat(w[3], total);
  raw[kDN] = raw[kND] = Rat(w[4], total);
  raw[kNN] = Rat(w[5], total);
  return StatePmf::validate(raw);
}

// Binding right-hand side over all half-planes with the given normal.
Rat rhs_of(const RegionSpec& spec, const Rat& a, const Rat& b) {
  bool found = false;
  Rat best(0);
  for (const HalfPlane& h : spec.planes) {
    if (h.a == a && h.b == b) {
      best = found ? std::min(best, h.c) : h.c;
      found = true;
    }
  }
  REQUIRE(found);
  return best;
}

}  // namespace

TEST_CASE("region inequalities for the paper pmfs") {
  const RegionSpec full = region_inequalities(pmf_of({{kPP, Rat(1)}}));
  CHECK(rhs_of(full, Rat(3), Rat(1)) == Rat(4));
  CHECK(rhs_of(full, Rat(1), Rat(1)) == Rat(2));

  const RegionSpec alt = region_inequalities(pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}}));
  CHECK(rhs_of(alt, Rat(3), Rat(1)) == Rat(3));
  CHECK(rhs_of(alt, Rat(1), Rat(1)) == Rat(2));
  CHECK(rhs_of(alt, Rat(1), Rat(0)) == Rat(1));

  const RegionSpec none = region_inequalities(pmf_of({{kNN, Rat(1)}}));
  CHECK(rhs_of(none, Rat(1), Rat(0)) == Rat(0));
  CHECK(rhs_of(none, Rat(0), Rat(1)) == Rat(0));
}

TEST_CASE("region vertices of the canonical pmfs") {
  const Polygon alt = region_vertices(pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}}));
  CHECK(alt.vertices.size() == 4);
  CHECK(alt.contains_vertex({Rat(0), Rat(0)}));
  CHECK(alt.contains_vertex({Rat(1), Rat(0)}));
  CHECK(alt.contains_vertex({Rat(3, 4), Rat(3, 4)}));
  CHECK(alt.contains_vertex({Rat(0), Rat(1)}));

  const Polygon square = region_vertices(pmf_of({{kPP, Rat(1)}}));
  CHECK(square.vertices.size() == 4);
  CHECK(square.contains_vertex({Rat(1), Rat(1)}));

  const Polygon dd = region_vertices(pmf_of({{kDD, Rat(1)}}));
  CHECK(dd.vertices.size() == 4);
  CHECK(dd.contains_vertex({Rat(2, 3), Rat(0)}));
  CHECK(dd.contains_vertex({Rat(1, 2), Rat(1, 2)}));
  CHECK(dd.contains_vertex({Rat(0), Rat(2, 3)}));

  const Polygon origin_only = region_vertices(pmf_of({{kNN, Rat(1)}}));
  CHECK(origin_only.vertices.size() == 1);
  CHECK(origin_only.vertices[0] == RatPoint{Rat(0), Rat(0)});
}

TEST_CASE("vertex list is CCW starting at the lexicographic minimum") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Polygon poly = region_vertices(random_pmf(gen));
    REQUIRE(!poly.vertices.empty());
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
      const Rat cross = (v[i + 1].x - v[i].x) * (v[i + 2].y - v[i].y) -
                        (v[i + 2].x - v[i].x) * (v[i + 1].y - v[i].y);
      CHECK(cross >= Rat(0));
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
      const bool lex_after = v[0].x < v[i].x || (v[0].x == v[i].x && v[0].y <= v[i].y);
      CHECK(lex_after);
    }
  }
}

TEST_CASE("sum_sdof reproduces the paper values") {
  CHECK(sum_sdof(pmf_of({{kPD, Rat(2, 5)}, {kDP, Rat(2, 5)}, {kNN, Rat(1, 5)}})) ==
        Rat(7, 5));
  CHECK(sum_sdof(pmf_of({{kPD, Rat(1, 5)}, {kDP, Rat(1, 5)}, {kNN, Rat(3, 5)}})) ==
        Rat(4, 5));
  CHECK(sum_sdof(pmf_of({{kPN, Rat(1, 3)}, {kNP, Rat(1, 3)}, {kDD, Rat(1, 3)}})) ==
        Rat(4, 3));
  CHECK(sum_sdof(pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}})) == Rat(3, 2));
  CHECK(sum_sdof(pmf_of({{kPP, Rat(1)}})) == Rat(2));
}

TEST_CASE("min-of-four and compact sum forms agree on random pmfs") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const StatePmf pmf = random_pmf(gen);
    const Marginals m = marginals(pmf);
    const Rat raw = std::min(
        std::min(Rat(2) * (Rat(2) + Rat(2) * m.p - pmf.mass(kPP)) / Rat(3),
                 Rat(2) * (Rat(1) - pmf.mass(kNN))),
        std::min(Rat(2) * (m.p + m.d), Rat(1) + m.p));
    CHECK(raw == sum_sdof(pmf));
  }
}

TEST_CASE("inactive-bound facts behind the compact sum form") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const StatePmf pmf = random_pmf(gen);
    const Marginals m = marginals(pmf);
    CHECK(Rat(1) + m.p <= Rat(2) * (Rat(2) + Rat(2) * m.p - pmf.mass(kPP)) / Rat(3));
    CHECK(Rat(2) * (m.p + m.d) <= Rat(2) * (Rat(1) - pmf.mass(kNN)));
  }
}

TEST_CASE("enhancement never shrinks the sum s.d.o.f. or the region") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const StatePmf pmf = random_pmf(gen);
    const StatePmf up = enhance(pmf, EnhancementRule::NToD);
    CHECK(sum_sdof(up) >= sum_sdof(pmf));
    for (const RatPoint& v : region_vertices(pmf).vertices) CHECK(membership(up, v));
  }
}

TEST_CASE("Remark 3 equivalences in their regimes") {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 2000; ++trial) {
    const StatePmf pmf = random_pmf(gen);
    const Marginals m = marginals(pmf);
    if (m.d >= m.n)
      CHECK(sum_sdof(enhance(pmf, EnhancementRule::NToD)) == sum_sdof(pmf));
    if (m.d <= m.n)
      CHECK(sum_sdof(enhance(pmf, EnhancementRule::DToP)) == sum_sdof(pmf));
  }
}

TEST_CASE("min_csit closed form and its paper values") {
  CHECK(min_csit(Rat(2)) == std::pair{Rat(1), Rat(0)});
  CHECK(min_csit(Rat(3, 2)) == std::pair{Rat(1, 2), Rat(1, 4)});
  CHECK(min_csit(Rat(4, 3)) == std::pair{Rat(1, 3), Rat(1, 3)});
  CHECK(min_csit(Rat(1)) == std::pair{Rat(0), Rat(1, 2)});
  CHECK(min_csit(Rat(1, 2)) == std::pair{Rat(0), Rat(1, 4)});
  CHECK_THROWS_AS(min_csit(Rat(5, 2)), SdofError);
}

TEST_CASE("min_csit marginals achieve exactly the requested sum") {
  for (int num = 0; num <= 40; ++num) {
    const Rat s(num, 20);
    const auto [lp, ld] = min_csit(s);
    const Rat rest = Rat(1) - lp - ld;
    REQUIRE(rest >= Rat(0));
    const StatePmf pmf = pmf_of({{kPP, lp}, {kDD, ld}, {kNN, rest}});
    CHECK(sum_sdof(pmf) == s);
  }
}

TEST_CASE("security_cost examples and identities") {
  CHECK(security_cost(pmf_of({{kPP, Rat(2, 5)}, {kDD, Rat(3, 10)}, {kNN, Rat(3, 10)}})) ==
        Rat(1, 5));
  CHECK(security_cost(pmf_of({{kPP, Rat(1, 2)}, {kNN, Rat(1, 2)}})) == Rat(1, 2));
  CHECK(security_cost(pmf_of({{kPP, Rat(1)}})) == Rat(0));
  // The piecewise value is asserted against Eq.-(34)-minus-sum and the alpha
  // decomposition inside security_cost itself; exercise both broadly.
  std::mt19937_64 gen(23);
  Rat acc(0);
  for (int trial = 0; trial < 10000; ++trial) acc += security_cost(random_pmf(gen));
  CHECK(acc >= Rat(0));
}

TEST_CASE("fixed-state regions") {
  const RegionSpec pd = fixed_state_region(kPD);
  CHECK(rhs_of(pd, Rat(1), Rat(1)) == Rat(1));
  const RegionSpec dn = fixed_state_region(kDN);
  CHECK(rhs_of(dn, Rat(1), Rat(1)) == Rat(1, 2));
  const RegionSpec pp = fixed_state_region(kPP);
  CHECK(contains(pp, {Rat(1), Rat(1)}));
  const Polygon nn = vertices_of(fixed_state_region(kNN));
  CHECK(nn.vertices.size() == 1);
  const Polygon dd = vertices_of(fixed_state_region(kDD));
  CHECK(dd.contains_vertex({Rat(1, 2), Rat(1, 2)}));
  CHECK_THROWS_AS(fixed_state_region(kND), SdofError);
  try {
    fixed_state_region(kNP);
  } catch (const SdofError& e) {
    CHECK(e.code() == Errc::UnsupportedState);
  }
}

TEST_CASE("membership checks") {
  const StatePmf pmf = pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}});
  CHECK(membership(pmf, {Rat(3, 4), Rat(3, 4)}));
  CHECK(!membership(pmf, {Rat(1), Rat(1)}));
  CHECK(membership(pmf, {Rat(0), Rat(0)}));
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 300; ++trial)
    CHECK(membership(random_pmf(gen), {Rat(0), Rat(0)}));
}

TEST_CASE("region is symmetric under user swap") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 500; ++trial) {
    const Polygon poly = region_vertices(random_pmf(gen));
    for (const RatPoint& v : poly.vertices) CHECK(poly.contains_vertex(swapped(v)));
  }
}
