#include "sdof/composer.hpp"

#include <algorithm>

#include "sdof/error.hpp"

namespace sdof {

namespace {

// Shorthand bundle for the recipe arithmetic (symmetric pmf, so the mirrored
// off-diagonal masses are equal).
struct Lam {
  Rat pp, pd, pn, dd, dn, nn;
  Rat p, d, n;
};

Lam lam_of(const StatePmf& pmf) {
  const Marginals m = marginals(pmf);
  return {pmf.mass(kPP), pmf.mass(kPD), pmf.mass(kPN),
          pmf.mass(kDD), pmf.mass(kDN), pmf.mass(kNN),
          m.p,           m.d,           m.n};
}

struct Bounds {
  Rat c1;  // single-user bound, min of both forms
  Rat c3;  // 3d1+d2 right-hand side
  Rat c5;  // sum right-hand side
  Rat ur_y;
};

Bounds bounds_of(const Lam& l) {
  Bounds b;
  const Rat form_p = (Rat(2) + Rat(2) * l.p - l.pp) / Rat(3);
  const Rat form_nn = Rat(1) - l.nn;
  b.c1 = std::min(form_p, form_nn);
  b.c3 = Rat(2) + Rat(2) * l.p;
  b.c5 = Rat(2) * (l.p + l.d);
  b.ur_y = std::min(std::min(b.c3 - Rat(3) * b.c1, b.c5 - b.c1), b.c1);
  return b;
}

class AllocationBuilder {
 public:
  void add(SchemeKind kind, const Rat& omega, bool mirrored = false,
           std::map<CsitState, CsitState> donors = {}) {
    if (omega == Rat(0)) return;
    for (AllocationEntry& e : alloc_.entries) {
      if (e.scheme.kind == kind && e.mirrored == mirrored && e.donors == donors) {
        e.omega += omega;
        return;
      }
    }
    alloc_.entries.push_back({{kind}, mirrored, omega, std::move(donors)});
  }
  Allocation take() { return std::move(alloc_); }

 private:
  Allocation alloc_;
};

// (1,0) on every state that carries perfect CSIT of either user: the
// artificial-noise form on P*-states, true zero-forcing on *P-states.
void add_rate10_helpers(AllocationBuilder& b, const Lam& l, bool include_pp,
                        const Rat& pd_share, const Rat& pn_share) {
  if (include_pp && l.pp != Rat(0))
    b.add(SchemeKind::PD_10, l.pp, false, {{kPD, kPP}});
  b.add(SchemeKind::PD_10, pd_share);
  b.add(SchemeKind::ZF_10, pd_share, false, {{kNP, kDP}});
  b.add(SchemeKind::PD_10, pn_share, false, {{kPD, kPN}});
  b.add(SchemeKind::ZF_10, pn_share);
}

// Exactly exhausts DD, DN and ND at the pair (2/3, 0) using the S*_23 family.
// The NN budget `nn_available` must be at least min(nn, dd/2 + dn); when DN
// outweighs NN the third slot of S3_23 is fed from the leftover DN/ND mass.
void add_two_thirds_block(AllocationBuilder& b, const Lam& l) {
  if (l.nn >= l.dn) {
    b.add(SchemeKind::S3_23, Rat(3) * l.dn);
    b.add(SchemeKind::S2_23, Rat(3) * (l.nn - l.dn));
    b.add(SchemeKind::S1_23, l.dd - Rat(2) * (l.nn - l.dn));
  } else {
    b.add(SchemeKind::S3_23, Rat(3) * l.nn);
    b.add(SchemeKind::S3_23, l.dn - l.nn, false, {{kNN, kDN}});
    b.add(SchemeKind::S3_23, l.dn - l.nn, false, {{kNN, kND}});
    b.add(SchemeKind::S1_23, l.dd);
  }
}

// Upper-right corner (c1, ur_y); covers the paper's P1, P, Q and R points.
Allocation compose_ur(const StatePmf& pmf, bool user1_full_rate) {
  const Lam l = lam_of(pmf);
  AllocationBuilder b;
  const bool p_bound_binding = l.dd + Rat(2) * l.dn >= Rat(2) * l.nn;

  if (user1_full_rate)
    add_rate10_helpers(b, l, /*include_pp=*/true, l.pd, l.pn);
  else
    b.add(SchemeKind::S2, l.pp);

  if (p_bound_binding) {
    if (!user1_full_rate) add_rate10_helpers(b, l, false, l.pd, l.pn);
    add_two_thirds_block(b, l);
  } else if (!user1_full_rate && l.nn <= l.d) {
    // Point Q: feed NN into the S*_23 family and S2_1.
    if (l.nn <= l.dd + l.dn) {
      b.add(SchemeKind::S3_23, Rat(3) * l.dn);
      b.add(SchemeKind::S2_23, Rat(3) * (l.dd + l.dn - l.nn));
      b.add(SchemeKind::S2_1, Rat(2) * (Rat(2) * l.nn - Rat(2) * l.dn - l.dd));
      add_rate10_helpers(b, l, false, l.pd, l.pn);
    } else {
      b.add(SchemeKind::S3_23, Rat(3) * l.dn);
      b.add(SchemeKind::S2_1, Rat(2) * l.dd);
      const Rat spill = l.nn - l.dn - l.dd;  // NN mass paired with PD/DP
      b.add(SchemeKind::S1_43, Rat(3) * spill);
      add_rate10_helpers(b, l, false, l.pd - spill, l.pn);
    }
  } else if (!user1_full_rate) {
    // Point R: remaining NN stays unused.
    b.add(SchemeKind::S2_1, Rat(2) * l.dd);
    b.add(SchemeKind::S1_43, Rat(3) * l.pd);
    b.add(SchemeKind::S3_23, Rat(3) * l.dn);
    add_rate10_helpers(b, l, false, Rat(0), l.pn);
  } else {
    // Axis corner with the 1 - lambda_NN bound binding: every non-NN state
    // serves user 1 only; NN beyond dd/2 + dn cannot help and stays unused.
    b.add(SchemeKind::S2_23, Rat(3, 2) * l.dd);
    b.add(SchemeKind::S3_23, Rat(3) * l.dn);
  }
  return b.take();
}

// Symmetric Case-A corner P2 = ((1+p)/2, (1+p)/2) via sub-cases A1-A3.
Allocation compose_p2(const StatePmf& pmf) {
  const Lam l = lam_of(pmf);
  AllocationBuilder b;
  b.add(SchemeKind::S2, l.pp);
  b.add(SchemeKind::S3_1, Rat(2) * l.dn);
  if (l.pd >= l.pn && l.dd >= l.nn) {  // A1
    b.add(SchemeKind::S2_32, Rat(4) * l.pn);
    b.add(SchemeKind::S1_32, Rat(2) * (l.pd - l.pn));
    b.add(SchemeKind::S2_1, Rat(2) * l.nn);
    b.add(SchemeKind::S1_1, l.dd - l.nn);
  } else if (l.pd >= l.pn) {  // A2
    b.add(SchemeKind::S2_32, Rat(4) * l.pn);
    b.add(SchemeKind::S2_1, Rat(2) * l.dd);
    b.add(SchemeKind::S1_43, Rat(3) * (l.nn - l.dd));
    b.add(SchemeKind::S1_32, Rat(2) * (l.pd - l.pn - l.nn + l.dd));
  } else {  // A3
    b.add(SchemeKind::S2_32, Rat(4) * l.pd);
    b.add(SchemeKind::S2_1, Rat(2) * l.nn);
    b.add(SchemeKind::S2_43, Rat(3) * (l.pn - l.pd));
    b.add(SchemeKind::S1_1, l.dd - l.nn - l.pn + l.pd);
  }
  return b.take();
}

// Case-B sum corner S = (p+n, p+2d-n) via sub-cases B1-B3.
Allocation compose_s(const StatePmf& pmf) {
  const Lam l = lam_of(pmf);
  AllocationBuilder b;
  b.add(SchemeKind::S2, l.pp);
  if (l.pd <= l.pn && l.dd <= l.nn) {  // B1
    b.add(SchemeKind::S2_1, Rat(2) * l.dd);
    if (l.nn - l.dd <= l.dn) {
      b.add(SchemeKind::S2_32, Rat(4) * l.pd);
      b.add(SchemeKind::S3_23, Rat(3) * (l.nn - l.dd));
      b.add(SchemeKind::S3_1, Rat(2) * (l.dn - l.nn + l.dd));
      add_rate10_helpers(b, l, false, Rat(0), l.pn - l.pd);
    } else {
      b.add(SchemeKind::S3_23, Rat(3) * l.dn);
      const Rat spill = l.nn - l.dd - l.dn;  // NN mass paired with PD/DP
      b.add(SchemeKind::S1_43, Rat(3) * spill);
      b.add(SchemeKind::S2_32, Rat(4) * (l.pd - spill));
      add_rate10_helpers(b, l, false, Rat(0), l.pn - l.pd + spill);
    }
  } else if (l.pd >= l.pn) {  // B2 (dd <= nn)
    b.add(SchemeKind::S2_1, Rat(2) * l.dd);
    if (l.nn - l.dd <= l.pd) {
      b.add(SchemeKind::S1_43, Rat(3) * (l.nn - l.dd));
      b.add(SchemeKind::S2_32, Rat(4) * (l.pd - (l.nn - l.dd)));
      b.add(SchemeKind::S3_1, Rat(2) * l.dn);
      add_rate10_helpers(b, l, false, Rat(0), l.pn - (l.pd - (l.nn - l.dd)));
    } else {
      b.add(SchemeKind::S1_43, Rat(3) * l.pd);
      b.add(SchemeKind::S3_23, Rat(3) * (l.nn - l.dd - l.pd));
      b.add(SchemeKind::S3_1, Rat(2) * (l.dn + l.dd + l.pd - l.nn));
      add_rate10_helpers(b, l, false, Rat(0), l.pn);
    }
  } else {  // B3 (pd <= pn, dd >= nn)
    b.add(SchemeKind::S2_32, Rat(4) * l.pd);
    b.add(SchemeKind::S2_1, Rat(2) * l.nn);
    b.add(SchemeKind::S2_43, Rat(3) * (l.dd - l.nn));
    b.add(SchemeKind::S3_1, Rat(2) * l.dn);
    add_rate10_helpers(b, l, false, Rat(0), l.pn - l.pd - (l.dd - l.nn));
  }
  return b.take();
}

Allocation mirror_allocation(const Allocation& alloc) {
  Allocation out;
  for (const AllocationEntry& e : alloc.entries) {
    AllocationEntry m = e;
    m.mirrored = !e.mirrored;
    m.donors.clear();
    for (const auto& [needed, donor] : e.donors)
      m.donors.emplace(swapped(needed), swapped(donor));
    out.entries.push_back(std::move(m));
  }
  return out;
}

Allocation scale_allocation(const Allocation& alloc, const Rat& factor) {
  Allocation out = alloc;
  for (AllocationEntry& e : out.entries) e.omega *= factor;
  std::erase_if(out.entries, [](const AllocationEntry& e) { return e.omega == Rat(0); });
  return out;
}

Allocation merge_allocations(const std::vector<Allocation>& parts) {
  AllocationBuilder b;
  for (const Allocation& part : parts)
    for (const AllocationEntry& e : part.entries) b.add(e.scheme.kind, e.omega, e.mirrored, e.donors);
  return b.take();
}

}  // namespace

const char* corner_name(CornerKind kind) {
  switch (kind) {
    case CornerKind::P1: return "P1";
    case CornerKind::P2: return "P2";
    case CornerKind::P: return "P";
    case CornerKind::Q: return "Q";
    case CornerKind::S: return "S";
    case CornerKind::R: return "R";
  }
  return "?";
}

Classification classify(const StatePmf& pmf) {
  const Lam l = lam_of(pmf);
  Classification c;
  c.case_a = l.n <= l.d;
  c.p_bound_binding = l.dd + Rat(2) * l.dn >= Rat(2) * l.nn;
  c.b_relevant = l.nn <= l.d;
  if (c.case_a) {
    if (l.pd >= l.pn && l.dd >= l.nn)
      c.subcase = 1;
    else if (l.pd >= l.pn)
      c.subcase = 2;
    else
      c.subcase = 3;
  } else {
    if (l.pd <= l.pn && l.dd <= l.nn)
      c.subcase = 1;
    else if (l.pd >= l.pn)
      c.subcase = 2;
    else
      c.subcase = 3;
  }
  return c;
}

RatPoint corner_point(const StatePmf& pmf, CornerKind kind) {
  const Lam l = lam_of(pmf);
  const Bounds b = bounds_of(l);
  const Classification c = classify(pmf);
  switch (kind) {
    case CornerKind::P1:
      if (!c.case_a) fail(Errc::TargetNotApplicable, "P1 requires lambda_N <= lambda_D");
      return {b.c1, b.ur_y};
    case CornerKind::P:
      if (!c.p_bound_binding)
        fail(Errc::TargetNotApplicable, "P requires lambda_DD+2*lambda_DN >= 2*lambda_NN");
      return {b.c1, b.ur_y};
    case CornerKind::Q:
      if (l.dd + Rat(2) * l.dn > Rat(2) * l.nn)
        fail(Errc::TargetNotApplicable, "Q requires lambda_DD+2*lambda_DN <= 2*lambda_NN");
      return {b.c1, b.ur_y};
    case CornerKind::R:
      if (l.nn < l.d) fail(Errc::TargetNotApplicable, "R requires lambda_NN >= lambda_D");
      return {b.c1, b.ur_y};
    case CornerKind::P2:
      if (!c.case_a) fail(Errc::TargetNotApplicable, "P2 requires lambda_N <= lambda_D");
      return {(Rat(1) + l.p) / Rat(2), (Rat(1) + l.p) / Rat(2)};
    case CornerKind::S: {
      if (l.n < l.d) fail(Errc::TargetNotApplicable, "S requires lambda_N >= lambda_D");
      if (l.nn > l.d) fail(Errc::TargetNotApplicable, "S requires lambda_NN <= lambda_D");
      const Rat d1 = (b.c3 - b.c5) / Rat(2);
      return {d1, b.c5 - d1};
    }
  }
  fail(Errc::InvalidParameter, "unknown corner kind");
}

Allocation compose_corner(const StatePmf& pmf, const CornerTarget& target) {
  corner_point(pmf, target.kind);  // applicability gate
  Allocation alloc;
  switch (target.kind) {
    case CornerKind::P1:
    case CornerKind::P:
    case CornerKind::Q:
    case CornerKind::R:
      alloc = compose_ur(pmf, /*user1_full_rate=*/false);
      break;
    case CornerKind::P2:
      alloc = compose_p2(pmf);
      break;
    case CornerKind::S:
      alloc = compose_s(pmf);
      break;
  }
  return target.mirrored ? mirror_allocation(alloc) : alloc;
}

std::map<CsitState, Rat> state_usage(const Allocation& alloc) {
  std::map<CsitState, Rat> usage;
  for (const AllocationEntry& e : alloc.entries) {
    for (const auto& [state, frac] : catalog_entry(e.scheme).states) {
      CsitState s = e.mirrored ? swapped(state) : state;
      if (auto it = e.donors.find(s); it != e.donors.end()) s = it->second;
      usage[s] += e.omega * frac;
    }
  }
  return usage;
}

RatPoint achieved_point(const Allocation& alloc) {
  RatPoint out;
  for (const AllocationEntry& e : alloc.entries) {
    const CatalogEntry entry = catalog_entry(e.scheme);
    out.x += e.omega * (e.mirrored ? entry.d2 : entry.d1);
    out.y += e.omega * (e.mirrored ? entry.d1 : entry.d2);
  }
  return out;
}

Feasibility feasible(const Allocation& alloc, const StatePmf& pmf) {
  Feasibility f;
  Rat total{0};
  bool donors_ok = true;
  for (const AllocationEntry& e : alloc.entries) {
    if (e.omega < Rat(0)) donors_ok = false;
    total += e.omega;
    for (const auto& [needed, donor] : e.donors) {
      const CsitState pre_mirror = e.mirrored ? swapped(needed) : needed;
      CsitState req = scheme_requirement(e.scheme.kind, pre_mirror);
      if (e.mirrored) req = swapped(req);
      if (!dominates(donor, req)) donors_ok = false;
    }
  }
  const auto usage = state_usage(alloc);
  bool within = true;
  for (CsitState s : kAllStates) {
    const Rat used = usage.count(s) ? usage.at(s) : Rat(0);
    f.rows.push_back({s, used, pmf.mass(s)});
    if (used > pmf.mass(s)) within = false;
  }
  f.ok = donors_ok && within && total <= Rat(1);
  return f;
}

Allocation compose_vertex(const StatePmf& pmf, const RatPoint& vertex) {
  const Lam l = lam_of(pmf);
  const Bounds b = bounds_of(l);
  const RatPoint origin{Rat(0), Rat(0)};
  if (vertex == origin) return {};
  const RatPoint ur{b.c1, b.ur_y};
  const RatPoint x_axis{b.c1, Rat(0)};
  if (vertex == ur) return compose_ur(pmf, false);
  if (vertex == swapped(ur)) return mirror_allocation(compose_ur(pmf, false));
  if (vertex == x_axis) return compose_ur(pmf, true);
  if (vertex == swapped(x_axis)) return mirror_allocation(compose_ur(pmf, true));
  if (l.n <= l.d) {
    const RatPoint p2{(Rat(1) + l.p) / Rat(2), (Rat(1) + l.p) / Rat(2)};
    if (vertex == p2) return compose_p2(pmf);
  } else if (l.nn <= l.d) {
    const Rat d1 = (b.c3 - b.c5) / Rat(2);
    const RatPoint s{d1, b.c5 - d1};
    if (vertex == s) return compose_s(pmf);
    if (vertex == swapped(s)) return mirror_allocation(compose_s(pmf));
  }
  fail(Errc::PointOutsideRegion,
       "(" + format_rational(vertex.x) + ", " + format_rational(vertex.y) +
           ") is not a region vertex");
}

Allocation compose_point(const StatePmf& pmf, const RatPoint& point) {
  if (!membership(pmf, point))
    fail(Errc::PointOutsideRegion,
         "(" + format_rational(point.x) + ", " + format_rational(point.y) + ")");
  std::vector<RatPoint> verts = region_vertices(pmf).vertices;
  std::sort(verts.begin(), verts.end(), [](const RatPoint& a, const RatPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  const int m = static_cast<int>(verts.size());

  // Singletons, then segments, then triangles, in lexicographic index order;
  // the first supporting set wins.
  for (int i = 0; i < m; ++i)
    if (verts[i] == point) return compose_vertex(pmf, verts[i]);

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const RatPoint &a = verts[i], &c = verts[j];
      const Rat cross = (c.x - a.x) * (point.y - a.y) - (point.x - a.x) * (c.y - a.y);
      if (cross != Rat(0)) continue;
      Rat t;
      if (c.x != a.x)
        t = (point.x - a.x) / (c.x - a.x);
      else if (c.y != a.y)
        t = (point.y - a.y) / (c.y - a.y);
      else
        continue;
      if (t < Rat(0) || t > Rat(1)) continue;
      return merge_allocations({scale_allocation(compose_vertex(pmf, a), Rat(1) - t),
                                scale_allocation(compose_vertex(pmf, c), t)});
    }
  }

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const RatPoint &a = verts[i], &c = verts[j], &d = verts[k];
        const Rat det = (c.x - a.x) * (d.y - a.y) - (d.x - a.x) * (c.y - a.y);
        if (det == Rat(0)) continue;
        const Rat w2 = ((point.x - a.x) * (d.y - a.y) - (d.x - a.x) * (point.y - a.y)) / det;
        const Rat w3 = ((c.x - a.x) * (point.y - a.y) - (point.x - a.x) * (c.y - a.y)) / det;
        const Rat w1 = Rat(1) - w2 - w3;
        if (w1 < Rat(0) || w2 < Rat(0) || w3 < Rat(0)) continue;
        return merge_allocations({scale_allocation(compose_vertex(pmf, a), w1),
                                  scale_allocation(compose_vertex(pmf, c), w2),
                                  scale_allocation(compose_vertex(pmf, d), w3)});
      }
    }
  }
  fail(Errc::PointOutsideRegion, "no supporting vertex set found");
}

SynergyGap synergy_gap(const StatePmf& pmf) {
  SynergyGap gap{sum_sdof(pmf), Rat(0)};
  for (CsitState s : kAllStates) gap.separable += pmf.mass(s) * fixed_state_sum(s);
  return gap;
}

}  // namespace sdof
