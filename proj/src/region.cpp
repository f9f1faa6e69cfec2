#include "sdof/region.hpp"

#include <algorithm>
#include <cassert>

#include "sdof/error.hpp"

namespace sdof {

namespace {

Rat min_rat(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat max_rat(const Rat& a, const Rat& b) { return a > b ? a : b; }

void push_nonnegativity(RegionSpec& spec) {
  spec.planes.push_back({Rat(-1), Rat(0), Rat(0)});
  spec.planes.push_back({Rat(0), Rat(-1), Rat(0)});
}

}  // namespace

bool Polygon::contains_vertex(const RatPoint& p) const {
  return std::find(vertices.begin(), vertices.end(), p) != vertices.end();
}

RegionSpec region_inequalities(const StatePmf& pmf) {
  const Marginals m = marginals(pmf);
  const Rat single_p = (Rat(2) + Rat(2) * m.p - pmf.mass(kPP)) / Rat(3);
  const Rat single_nn = Rat(1) - pmf.mass(kNN);
  const Rat weighted = Rat(2) + Rat(2) * m.p;
  const Rat sum = Rat(2) * (m.p + m.d);

  RegionSpec spec;
  spec.planes.push_back({Rat(1), Rat(0), single_p});
  spec.planes.push_back({Rat(1), Rat(0), single_nn});
  spec.planes.push_back({Rat(0), Rat(1), single_p});
  spec.planes.push_back({Rat(0), Rat(1), single_nn});
  spec.planes.push_back({Rat(3), Rat(1), weighted});
  spec.planes.push_back({Rat(1), Rat(3), weighted});
  spec.planes.push_back({Rat(1), Rat(1), sum});
  push_nonnegativity(spec);
  return spec;
}

bool contains(const RegionSpec& spec, const RatPoint& p) {
  for (const HalfPlane& h : spec.planes)
    if (h.a * p.x + h.b * p.y > h.c) return false;
  return true;
}

bool membership(const StatePmf& pmf, const RatPoint& p) {
  return contains(region_inequalities(pmf), p);
}

Polygon vertices_of(const RegionSpec& spec) {
  const auto& planes = spec.planes;
  std::vector<RatPoint> pts;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const Rat det = planes[i].a * planes[j].b - planes[j].a * planes[i].b;
      if (det == Rat(0)) continue;
      RatPoint p{(planes[i].c * planes[j].b - planes[j].c * planes[i].b) / det,
                 (planes[i].a * planes[j].c - planes[j].a * planes[i].c) / det};
      if (contains(spec, p)) pts.push_back(p);
    }
  }
  auto lex = [](const RatPoint& a, const RatPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  };
  std::sort(pts.begin(), pts.end(), lex);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() > 2) {
    // CCW order around the centroid, then rotate so the lexicographically
    // smallest vertex comes first.
    RatPoint c{0, 0};
    for (const RatPoint& p : pts) {
      c.x += p.x;
      c.y += p.y;
    }
    const Rat n(static_cast<long long>(pts.size()));
    c.x /= n;
    c.y /= n;
    auto half = [&](const RatPoint& p) {
      const Rat dx = p.x - c.x, dy = p.y - c.y;
      return (dy > Rat(0) || (dy == Rat(0) && dx > Rat(0))) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const RatPoint& p, const RatPoint& q) {
      const int hp = half(p), hq = half(q);
      if (hp != hq) return hp < hq;
      const Rat cross = (p.x - c.x) * (q.y - c.y) - (q.x - c.x) * (p.y - c.y);
      if (cross != Rat(0)) return cross > Rat(0);
      return lex(p, q);
    });
    auto smallest = std::min_element(pts.begin(), pts.end(), lex);
    std::rotate(pts.begin(), smallest, pts.end());
  }
  return Polygon{std::move(pts)};
}

Polygon region_vertices(const StatePmf& pmf) {
  return vertices_of(region_inequalities(pmf));
}

Rat sum_sdof(const StatePmf& pmf) {
  const Marginals m = marginals(pmf);
  const Rat compact = Rat(2) * m.p + m.d + min_rat(m.d, m.n);
  // Unsimplified min-of-four form; the first two terms are provably inactive.
  const Rat raw = min_rat(
      min_rat(Rat(2) * (Rat(2) + Rat(2) * m.p - pmf.mass(kPP)) / Rat(3),
              Rat(2) * (Rat(1) - pmf.mass(kNN))),
      min_rat(Rat(2) * (m.p + m.d), Rat(1) + m.p));
  assert(raw == compact);
  (void)raw;
  return compact;
}

std::pair<Rat, Rat> min_csit(const Rat& s) {
  if (s < Rat(0) || s > Rat(2))
    fail(Errc::OutOfRange, "sum s.d.o.f. " + format_rational(s) + " outside [0, 2]");
  if (s >= Rat(1)) return {s - Rat(1), Rat(1) - s / Rat(2)};
  return {Rat(0), s / Rat(2)};
}

Rat security_cost(const StatePmf& pmf) {
  const Marginals m = marginals(pmf);
  Rat loss;
  if (m.n >= Rat(2) * m.d)
    loss = m.n;
  else if (m.n >= m.d)
    loss = Rat(2, 3) * (Rat(2) * m.n - m.d);
  else
    loss = Rat(1, 3) * (m.n + m.d);

  // Cross-check against (sum d.o.f.) - (sum s.d.o.f.).
  const Rat sum_dof =
      Rat(2) - Rat(2, 3) * m.n - max_rat(m.n, Rat(2) * m.d) / Rat(3);
  assert(sum_dof - sum_sdof(pmf) == loss);
  (void)sum_dof;

  // Cross-check the alpha form: loss = (ld+ln) * g(ld/(ld+ln)).
  const Rat imperfect = m.d + m.n;
  if (imperfect != Rat(0)) {
    const Rat alpha = m.d / imperfect;
    Rat g;
    if (alpha <= Rat(1, 3))
      g = Rat(1) - alpha;
    else if (alpha <= Rat(1, 2))
      g = Rat(4, 3) - Rat(2) * alpha;
    else
      g = Rat(1, 3);
    assert(imperfect * g == loss);
    (void)g;
  }
  return loss;
}

RegionSpec fixed_state_region(CsitState state) {
  RegionSpec spec;
  if (state == kPP) {
    spec.planes.push_back({Rat(1), Rat(0), Rat(1)});
    spec.planes.push_back({Rat(0), Rat(1), Rat(1)});
  } else if (state == kPD || state == kPN) {
    spec.planes.push_back({Rat(1), Rat(1), Rat(1)});
  } else if (state == kDD) {
    return region_inequalities(StatePmf::validate({{kDD, Rat(1)}}));
  } else if (state == kDN) {
    spec.planes.push_back({Rat(1), Rat(1), Rat(1, 2)});
  } else if (state == kNN) {
    spec.planes.push_back({Rat(1), Rat(0), Rat(0)});
    spec.planes.push_back({Rat(0), Rat(1), Rat(0)});
  } else {
    fail(Errc::UnsupportedState,
         "state " + state_code(state) + " is not a canonical orientation");
  }
  push_nonnegativity(spec);
  return spec;
}

Rat fixed_state_sum(CsitState state) {
  if (state == kPP) return Rat(2);
  if (state == kNN) return Rat(0);
  if (state == kDN || state == kND) return Rat(1, 2);
  return Rat(1);  // PD, DP, PN, NP, DD
}

}  // namespace sdof
