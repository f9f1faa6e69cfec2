#include "sdof/schemes.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "json.hpp"
#include "sdof/error.hpp"

namespace sdof {

namespace {

using Group = SymbolRef::Group;

SymbolRef U(int i) { return {Group::U, i}; }
SymbolRef V(int i) { return {Group::V, i}; }
SymbolRef Q(int i) { return {Group::Q, i}; }

Expr h(int user, int entry, int slot) { return Expr::entry(user, entry, slot); }
Expr one() { return Expr::constant(Rat(1)); }
Expr zero() { return Expr{}; }

// Unnormalized direction with H_user(slot) * beam = 0; power normalization is
// applied numerically when a plan is evaluated on a realization.
std::array<Expr, 2> beam_against(int user, int slot) {
  return {Rat(-1) * h(user, 1, slot), h(user, 0, slot)};
}

// Linear functional of the transmit symbols, used for reconstructed receiver
// observations (K, L, G, ...) that get retransmitted in later slots.
struct LinComb {
  std::vector<std::pair<SymbolRef, Expr>> parts;

  LinComb& add(SymbolRef s, const Expr& e) {
    for (auto& [sym, expr] : parts) {
      if (sym == s) {
        expr += e;
        return *this;
      }
    }
    parts.emplace_back(s, e);
    return *this;
  }
  LinComb& add(const LinComb& other, const Expr& scale) {
    for (const auto& [sym, expr] : other.parts) add(sym, scale * expr);
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) {
    for (const auto& [sym, expr] : b.parts) a.add(sym, expr);
    return a;
  }
};

// (available_from_slot, user, referenced_slot)
using Delivery = std::tuple<int, int, int>;

CsitLedger ledger_from(const std::vector<CsitState>& states,
                       const std::vector<Delivery>& deliveries) {
  CsitLedger ledger;
  const int n = static_cast<int>(states.size());
  ledger.available.resize(n);
  auto deliver = [&](int from, int user, int ref) {
    for (int t = from; t < n; ++t) ledger.available[t].insert({user, ref});
  };
  for (int t = 0; t < n; ++t) {
    if (states[t].i1 == CsitForm::P) deliver(t, 1, t);
    if (states[t].i2 == CsitForm::P) deliver(t, 2, t);
  }
  for (const auto& [from, user, ref] : deliveries) deliver(from, user, ref);
  return ledger;
}

// Delayed CSIT in its standard form: the current row arrives one slot later.
CsitLedger standard_ledger(const std::vector<CsitState>& states) {
  std::vector<Delivery> deliveries;
  for (int t = 0; t < static_cast<int>(states.size()); ++t) {
    if (states[t].i1 == CsitForm::D) deliveries.emplace_back(t + 1, 1, t);
    if (states[t].i2 == CsitForm::D) deliveries.emplace_back(t + 1, 2, t);
  }
  return ledger_from(states, deliveries);
}

struct Builder {
  SchemePlan plan;

  Builder(SchemeId id, std::vector<CsitState> states, int n1, int n2, int nq) {
    plan.id = id;
    plan.n_b = static_cast<int>(states.size());
    plan.n1 = n1;
    plan.n2 = n2;
    plan.nq = nq;
    plan.slots.resize(states.size());
    for (std::size_t t = 0; t < states.size(); ++t) plan.slots[t].state = states[t];
  }

  void put(int slot, SymbolRef sym, Expr e0, Expr e1) {
    for (auto& [s, coeffs] : plan.slots[slot].coeffs) {
      if (s == sym) {
        coeffs[0] += e0;
        coeffs[1] += e1;
        return;
      }
    }
    plan.slots[slot].coeffs.push_back({sym, {std::move(e0), std::move(e1)}});
  }
  void put_comb(int slot, const LinComb& comb, int antenna) {
    for (const auto& [sym, expr] : comb.parts)
      put(slot, sym, antenna == 0 ? expr : zero(), antenna == 0 ? zero() : expr);
  }
  void put_comb_beam(int slot, const LinComb& comb, const std::array<Expr, 2>& beam) {
    for (const auto& [sym, expr] : comb.parts)
      put(slot, sym, beam[0] * expr, beam[1] * expr);
  }
  void put_beam(int slot, SymbolRef sym, const std::array<Expr, 2>& beam) {
    put(slot, sym, beam[0], beam[1]);
  }

  // What receiver `user` observes in `slot` (noiseless), as a functional of
  // the transmit symbols.
  LinComb received(int user, int slot) const {
    LinComb out;
    for (const auto& [sym, coeffs] : plan.slots[slot].coeffs)
      out.add(sym, h(user, 0, slot) * coeffs[0] + h(user, 1, slot) * coeffs[1]);
    return out;
  }

  SchemePlan take(CsitLedger ledger) {
    plan.ledger = std::move(ledger);
    return std::move(plan);
  }
};

SchemePlan build_s2() {
  Builder b({SchemeKind::S2}, {kPP}, 1, 1, 0);
  b.put_beam(0, U(0), beam_against(2, 0));
  b.put_beam(0, V(0), beam_against(1, 0));
  return b.take(standard_ledger({kPP}));
}

// S1_32 runs on PD, DP, DP, PD; S2_32 is the same construction with the
// unused CSIT of the last two slots dropped (states NP, PN instead).
SchemePlan build_s32(SchemeKind kind) {
  const std::vector<CsitState> states = kind == SchemeKind::S1_32
                                            ? std::vector<CsitState>{kPD, kDP, kDP, kPD}
                                            : std::vector<CsitState>{kPD, kDP, kNP, kPN};
  Builder b({kind}, states, 3, 3, 1);
  b.put(0, U(0), one(), zero());
  b.put_beam(0, Q(0), beam_against(1, 0));
  const LinComb key = b.received(2, 0);  // K = h21(0) u0 + q H2(0) H1(0)^perp

  b.put(1, V(0), one(), zero());
  b.put(1, V(1), zero(), one());
  for (const auto& [sym, expr] : key.parts) b.put(1, sym, expr, expr);
  b.put_beam(1, U(1), beam_against(2, 1));

  // L1 = h11(1) v0 + h12(1) v1 + (h11(1)+h12(1)) K; the u1 term is nulled at
  // receiver 1 and not part of the retransmission.
  LinComb l1;
  l1.add(V(0), h(1, 0, 1));
  l1.add(V(1), h(1, 1, 1));
  l1.add(key, h(1, 0, 1) + h(1, 1, 1));

  b.put_comb(2, l1, 0);
  b.put_beam(2, U(2), beam_against(2, 2));

  b.put_comb(3, l1, 0);
  b.put_beam(3, V(2), beam_against(1, 3));
  return b.take(standard_ledger(states));
}

SchemePlan build_s1_43() {
  const std::vector<CsitState> states{kPD, kDP, kNN};
  Builder b({SchemeKind::S1_43}, states, 2, 2, 1);
  b.put(0, U(0), one(), zero());
  b.put_beam(0, Q(0), beam_against(1, 0));
  const LinComb key = b.received(2, 0);

  b.put(1, V(0), one(), zero());
  b.put(1, V(1), zero(), one());
  for (const auto& [sym, expr] : key.parts) b.put(1, sym, expr, expr);
  b.put_beam(1, U(1), beam_against(2, 1));

  LinComb l1;
  l1.add(V(0), h(1, 0, 1));
  l1.add(V(1), h(1, 1, 1));
  l1.add(key, h(1, 0, 1) + h(1, 1, 1));
  b.put_comb(2, l1, 0);
  return b.take(standard_ledger(states));
}

SchemePlan build_s2_43() {
  const std::vector<CsitState> states{kDD, kDD, kNP, kPN, kPN, kNP};
  Builder b({SchemeKind::S2_43}, states, 4, 4, 2);
  b.put(0, Q(0), one(), zero());
  b.put(0, Q(1), zero(), one());
  const LinComb k1 = b.received(1, 0);
  const LinComb k2 = b.received(2, 0);

  // X(1) = [u0+u1+v2+v3+K1, v0+v1+u2+u3+K2]
  for (SymbolRef s : {U(0), U(1), V(2), V(3)}) b.put(1, s, one(), zero());
  for (SymbolRef s : {V(0), V(1), U(2), U(3)}) b.put(1, s, zero(), one());
  for (const auto& [sym, expr] : k1.parts) b.put(1, sym, expr, zero());
  for (const auto& [sym, expr] : k2.parts) b.put(1, sym, zero(), expr);

  LinComb l2;  // u-part of Z(1), protected by K1
  l2.add(U(0), h(2, 0, 1)).add(U(1), h(2, 0, 1));
  l2.add(U(2), h(2, 1, 1)).add(U(3), h(2, 1, 1));
  l2.add(k1, h(2, 0, 1));
  LinComb g1;  // v-part of Y(1), protected by K2
  g1.add(V(2), h(1, 0, 1)).add(V(3), h(1, 0, 1));
  g1.add(V(0), h(1, 1, 1)).add(V(1), h(1, 1, 1));
  g1.add(k2, h(1, 1, 1));

  // Fresh generic combinations, linearly independent of L1/L2 (resp. G1/G2).
  LinComb l3, l4, g3, g4;
  for (int i = 0; i < 4; ++i) {
    l3.add(U(i), Expr::constant(Rat(i + 1)));
    l4.add(U(i), Expr::constant(Rat((i + 1) * (i + 1))));
    g3.add(V(i), Expr::constant(Rat(i + 1)));
    g4.add(V(i), Expr::constant(Rat((i + 1) * (i + 1))));
  }

  b.put_comb(2, g1, 0);
  b.put_comb_beam(2, l3, beam_against(2, 2));
  b.put_comb(3, l2, 0);
  b.put_comb_beam(3, g3, beam_against(1, 3));
  b.put_comb(4, g1, 0);
  b.put_comb_beam(4, g4, beam_against(1, 4));
  b.put_comb(5, l2, 0);
  b.put_comb_beam(5, l4, beam_against(2, 5));
  return b.take(standard_ledger(states));
}

SchemePlan build_s1_1() {
  const std::vector<CsitState> states{kDD, kDD, kDD, kDD};
  Builder b({SchemeKind::S1_1}, states, 2, 2, 2);
  b.put(0, Q(0), one(), zero());
  b.put(0, Q(1), zero(), one());
  const LinComb k1 = b.received(1, 0);
  const LinComb k2 = b.received(2, 0);

  b.put(1, U(0), one(), zero());
  b.put(1, U(1), zero(), one());
  for (const auto& [sym, expr] : k1.parts) b.put(1, sym, expr, expr);
  const LinComb l = b.received(2, 1);

  b.put(2, V(0), one(), zero());
  b.put(2, V(1), zero(), one());
  for (const auto& [sym, expr] : k2.parts) b.put(2, sym, expr, expr);
  const LinComb g = b.received(1, 2);

  b.put_comb(3, l + g, 0);
  return b.take(standard_ledger(states));
}

SchemePlan build_s2_1() {
  const std::vector<CsitState> states{kDD, kDD, kNN, kNN};
  Builder b({SchemeKind::S2_1}, states, 2, 2, 2);
  b.put(0, Q(0), one(), zero());
  b.put(0, Q(1), zero(), one());
  const LinComb k1 = b.received(1, 0);
  const LinComb k2 = b.received(2, 0);

  // X(1) = [u0+v0+K1, u1+v1+K2]
  b.put(1, U(0), one(), zero());
  b.put(1, V(0), one(), zero());
  b.put(1, U(1), zero(), one());
  b.put(1, V(1), zero(), one());
  for (const auto& [sym, expr] : k1.parts) b.put(1, sym, expr, zero());
  for (const auto& [sym, expr] : k2.parts) b.put(1, sym, zero(), expr);

  LinComb l2;
  l2.add(U(0), h(2, 0, 1)).add(U(1), h(2, 1, 1));
  l2.add(k1, h(2, 0, 1));
  LinComb g1;
  g1.add(V(0), h(1, 0, 1)).add(V(1), h(1, 1, 1));
  g1.add(k2, h(1, 1, 1));

  b.put_comb(2, l2, 0);
  b.put_comb(3, g1, 0);
  return b.take(standard_ledger(states));
}

// Four blocks: A (DN, n slots) seeds per-slot key pairs with artificial
// noise; B (ND, n slots) sends user 1's symbols under keys K1_i while user 2
// feeds back the block-A rows; C (ND, n slots) sends user 2's symbols under
// keys K2_i while user 2 feeds back the block-B rows; D (DN, n+1 slots,
// first slot silent) forwards L_{2i}+G_{2i-1} while user 1 feeds back the
// block-C rows. Keys for block C are the K2_i = Z^A(i) observations: receiver
// 2 can strip them, and the equivocation argument needs exactly those.
SchemePlan build_s3_1(int n) {
  if (n < 1) fail(Errc::InvalidParameter, "S3_1 requires n >= 1");
  std::vector<CsitState> states;
  for (int i = 0; i < n; ++i) states.push_back(kDN);       // block A
  for (int i = 0; i < 2 * n; ++i) states.push_back(kND);   // blocks B, C
  for (int i = 0; i <= n; ++i) states.push_back(kDN);      // block D
  Builder b({SchemeKind::S3_1, n}, states, 2 * n, 2 * n, 2 * n);

  std::vector<LinComb> k1(n), k2(n);
  for (int i = 0; i < n; ++i) {
    b.put(i, Q(2 * i), one(), zero());
    b.put(i, Q(2 * i + 1), zero(), one());
    k1[i] = b.received(1, i);
    k2[i] = b.received(2, i);
  }
  for (int i = 0; i < n; ++i) {
    const int t = n + i;
    b.put(t, U(2 * i), one(), zero());
    b.put(t, U(2 * i + 1), zero(), one());
    for (const auto& [sym, expr] : k1[i].parts) b.put(t, sym, expr, expr);
  }
  for (int i = 0; i < n; ++i) {
    const int t = 2 * n + i;
    b.put(t, V(2 * i), one(), zero());
    b.put(t, V(2 * i + 1), zero(), one());
    for (const auto& [sym, expr] : k2[i].parts) b.put(t, sym, expr, expr);
  }
  // Block D: slot 3n stays silent; slot 3n+j forwards Z^B(j-1) + Y^C(j-1).
  for (int j = 1; j <= n; ++j)
    b.put_comb(3 * n + j, b.received(2, n + (j - 1)) + b.received(1, 2 * n + (j - 1)), 0);

  std::vector<Delivery> deliveries;
  for (int i = 0; i < n; ++i) deliveries.emplace_back(i + 1, 1, i);
  for (int i = 0; i < n; ++i) deliveries.emplace_back(n + i + 1, 2, i);
  for (int i = 0; i < n; ++i) deliveries.emplace_back(2 * n + i + 1, 2, n + i);
  for (int j = 0; j < n; ++j) deliveries.emplace_back(3 * n + j + 1, 1, 2 * n + j);
  return b.take(ledger_from(states, deliveries));
}

// The (2/3, 0) construction shared by S1_23 (DD,DD,DD), S2_23 (DD,DD,NN)
// and S3_23 (DN,ND,NN): noise seeds a key for receiver 1, two symbols ride
// the key, and the cross observation is forwarded in the last slot.
SchemePlan build_s23(SchemeKind kind) {
  std::vector<CsitState> states;
  switch (kind) {
    case SchemeKind::S1_23: states = {kDD, kDD, kDD}; break;
    case SchemeKind::S2_23: states = {kDD, kDD, kNN}; break;
    default: states = {kDN, kND, kNN}; break;
  }
  Builder b({kind}, states, 2, 0, 2);
  b.put(0, Q(0), one(), zero());
  b.put(0, Q(1), zero(), one());
  const LinComb k1 = b.received(1, 0);
  b.put(1, U(0), one(), zero());
  b.put(1, U(1), zero(), one());
  for (const auto& [sym, expr] : k1.parts) b.put(1, sym, expr, expr);
  b.put_comb(2, b.received(2, 1), 0);
  return b.take(standard_ledger(states));
}

SchemePlan build_zf(SchemeKind kind) {
  if (kind == SchemeKind::ZF_10) {
    Builder b({kind}, {kNP}, 1, 0, 0);
    b.put_beam(0, U(0), beam_against(2, 0));
    return b.take(standard_ledger({kNP}));
  }
  Builder b({kind}, {kPN}, 0, 1, 0);
  b.put_beam(0, V(0), beam_against(1, 0));
  return b.take(standard_ledger({kPN}));
}

SchemePlan build_pd(SchemeKind kind) {
  if (kind == SchemeKind::PD_10) {
    Builder b({kind}, {kPD}, 1, 0, 1);
    b.put(0, U(0), one(), zero());
    b.put_beam(0, Q(0), beam_against(1, 0));
    return b.take(standard_ledger({kPD}));
  }
  Builder b({kind}, {kPD}, 0, 1, 0);
  b.put_beam(0, V(0), beam_against(1, 0));
  return b.take(standard_ledger({kPD}));
}

SchemePlan build_dn(SchemeKind kind) {
  const std::vector<CsitState> states{kDN, kDN};
  if (kind == SchemeKind::DN_half_0) {
    Builder b({kind}, states, 1, 0, 2);
    b.put(0, Q(0), one(), zero());
    b.put(0, Q(1), zero(), one());
    const LinComb l1 = b.received(1, 0);
    b.put(1, U(0), one(), zero());
    b.put_comb(1, l1, 1);
    return b.take(standard_ledger(states));
  }
  Builder b({kind}, states, 0, 1, 1);
  b.put(0, V(0), one(), zero());
  b.put(0, Q(0), zero(), one());
  b.put_comb(1, b.received(1, 0), 0);
  return b.take(standard_ledger(states));
}

}  // namespace

std::string scheme_name(SchemeId id) {
  std::string base;
  switch (id.kind) {
    case SchemeKind::S2: base = "S2"; break;
    case SchemeKind::S1_32: base = "S1_32"; break;
    case SchemeKind::S2_32: base = "S2_32"; break;
    case SchemeKind::S1_43: base = "S1_43"; break;
    case SchemeKind::S2_43: base = "S2_43"; break;
    case SchemeKind::S1_1: base = "S1_1"; break;
    case SchemeKind::S2_1: base = "S2_1"; break;
    case SchemeKind::S3_1: base = "S3_1"; break;
    case SchemeKind::S1_23: base = "S1_23"; break;
    case SchemeKind::S2_23: base = "S2_23"; break;
    case SchemeKind::S3_23: base = "S3_23"; break;
    case SchemeKind::ZF_10: base = "ZF_10"; break;
    case SchemeKind::ZF_01: base = "ZF_01"; break;
    case SchemeKind::PD_10: base = "PD_10"; break;
    case SchemeKind::PD_01: base = "PD_01"; break;
    case SchemeKind::DN_half_0: base = "DN_half_0"; break;
    case SchemeKind::DN_0_half: base = "DN_0_half"; break;
  }
  if (id.kind == SchemeKind::S3_1 && id.n > 0)
    base += "(n=" + std::to_string(id.n) + ")";
  return base;
}

SchemeId parse_scheme(const std::string& name, int n) {
  for (SchemeKind kind : kAllSchemeKinds)
    if (scheme_name({kind}) == name) return {kind, kind == SchemeKind::S3_1 ? n : 0};
  fail(Errc::ParseError, "unknown scheme '" + name + "'");
}

std::vector<CatalogEntry> catalog() {
  const Rat half(1, 2), third(1, 3), quarter(1, 4);
  std::vector<CatalogEntry> out;
  out.push_back({{SchemeKind::S2}, {{kPP, Rat(1)}}, Rat(1), Rat(1)});
  out.push_back({{SchemeKind::S1_32}, {{kPD, half}, {kDP, half}}, Rat(3, 4), Rat(3, 4)});
  out.push_back({{SchemeKind::S2_32},
                 {{kPD, quarter}, {kDP, quarter}, {kPN, quarter}, {kNP, quarter}},
                 Rat(3, 4),
                 Rat(3, 4)});
  out.push_back({{SchemeKind::S1_43},
                 {{kPD, third}, {kDP, third}, {kNN, third}},
                 Rat(2, 3),
                 Rat(2, 3)});
  out.push_back({{SchemeKind::S2_43},
                 {{kPN, third}, {kNP, third}, {kDD, third}},
                 Rat(2, 3),
                 Rat(2, 3)});
  out.push_back({{SchemeKind::S1_1}, {{kDD, Rat(1)}}, half, half});
  out.push_back({{SchemeKind::S2_1}, {{kDD, half}, {kNN, half}}, half, half});
  out.push_back({{SchemeKind::S3_1}, {{kDN, half}, {kND, half}}, half, half});
  out.push_back({{SchemeKind::S1_23}, {{kDD, Rat(1)}}, Rat(2, 3), Rat(0)});
  out.push_back({{SchemeKind::S2_23}, {{kDD, Rat(2, 3)}, {kNN, third}}, Rat(2, 3), Rat(0)});
  out.push_back({{SchemeKind::S3_23},
                 {{kDN, third}, {kND, third}, {kNN, third}},
                 Rat(2, 3),
                 Rat(0)});
  out.push_back({{SchemeKind::ZF_10}, {{kNP, Rat(1)}}, Rat(1), Rat(0)});
  out.push_back({{SchemeKind::ZF_01}, {{kPN, Rat(1)}}, Rat(0), Rat(1)});
  out.push_back({{SchemeKind::PD_10}, {{kPD, Rat(1)}}, Rat(1), Rat(0)});
  out.push_back({{SchemeKind::PD_01}, {{kPD, Rat(1)}}, Rat(0), Rat(1)});
  out.push_back({{SchemeKind::DN_half_0}, {{kDN, Rat(1)}}, half, Rat(0)});
  out.push_back({{SchemeKind::DN_0_half}, {{kDN, Rat(1)}}, Rat(0), half});
  return out;
}

CatalogEntry catalog_entry(SchemeId id) {
  for (CatalogEntry& e : catalog()) {
    if (e.id.kind == id.kind) {
      e.id = id;
      return e;
    }
  }
  fail(Errc::InvalidParameter, "no catalog entry for " + scheme_name(id));
}

std::pair<Rat, Rat> expected_pair(SchemeId id) {
  if (id.kind == SchemeKind::S3_1 && id.n >= 1) {
    const Rat d(2LL * id.n, 4LL * id.n + 1);
    return {d, d};
  }
  const CatalogEntry e = catalog_entry(id);
  return {e.d1, e.d2};
}

CsitState scheme_requirement(SchemeKind kind, CsitState nominal) {
  switch (kind) {
    case SchemeKind::S3_23:
      if (nominal == kNN) return kNN;
      return nominal;  // DN, ND used as-is
    case SchemeKind::PD_10:
    case SchemeKind::PD_01:
      return kPN;  // user 2's delayed CSIT is never referenced
    case SchemeKind::ZF_10:
      return kNP;
    case SchemeKind::ZF_01:
      return kPN;
    case SchemeKind::DN_half_0:
    case SchemeKind::DN_0_half:
      return kDN;
    default:
      return nominal;
  }
}

int SchemePlan::column_of(SymbolRef s) const {
  switch (s.group) {
    case SymbolRef::Group::U: return s.index;
    case SymbolRef::Group::V: return n1 + s.index;
    case SymbolRef::Group::Q: return n1 + n2 + s.index;
  }
  return -1;
}

std::vector<std::pair<CsitState, Rat>> SchemePlan::state_fractions() const {
  std::map<CsitState, int> counts;
  for (const SlotRule& slot : slots) counts[slot.state]++;
  std::vector<std::pair<CsitState, Rat>> out;
  for (CsitState s : kAllStates)
    if (auto it = counts.find(s); it != counts.end())
      out.emplace_back(s, Rat(it->second, n_b));
  return out;
}

SchemePlan build_plan(SchemeId id) {
  switch (id.kind) {
    case SchemeKind::S2: return build_s2();
    case SchemeKind::S1_32:
    case SchemeKind::S2_32: return build_s32(id.kind);
    case SchemeKind::S1_43: return build_s1_43();
    case SchemeKind::S2_43: return build_s2_43();
    case SchemeKind::S1_1: return build_s1_1();
    case SchemeKind::S2_1: return build_s2_1();
    case SchemeKind::S3_1: return build_s3_1(id.n);
    case SchemeKind::S1_23:
    case SchemeKind::S2_23:
    case SchemeKind::S3_23: return build_s23(id.kind);
    case SchemeKind::ZF_10:
    case SchemeKind::ZF_01: return build_zf(id.kind);
    case SchemeKind::PD_10:
    case SchemeKind::PD_01: return build_pd(id.kind);
    case SchemeKind::DN_half_0:
    case SchemeKind::DN_0_half: return build_dn(id.kind);
  }
  fail(Errc::InvalidParameter, "unknown scheme kind");
}

std::vector<CsitViolation> validate_csit(const SchemePlan& plan) {
  std::vector<CsitViolation> out;
  for (int t = 0; t < plan.n_b; ++t) {
    std::set<std::pair<int, int>> refs;
    for (const auto& [sym, coeffs] : plan.slots[t].coeffs) {
      coeffs[0].collect_refs(refs);
      coeffs[1].collect_refs(refs);
    }
    for (const auto& [user, ref_slot] : refs)
      if (!plan.ledger.has(t, user, ref_slot)) out.push_back({t, user, ref_slot});
  }
  return out;
}

SchemePlan swap_users(const SchemePlan& plan) {
  SchemePlan out;
  out.id = plan.id;
  out.n_b = plan.n_b;
  out.n1 = plan.n2;
  out.n2 = plan.n1;
  out.nq = plan.nq;
  out.slots.resize(plan.slots.size());
  for (std::size_t t = 0; t < plan.slots.size(); ++t) {
    out.slots[t].state = swapped(plan.slots[t].state);
    for (const auto& [sym, coeffs] : plan.slots[t].coeffs) {
      SymbolRef s = sym;
      if (s.group == SymbolRef::Group::U)
        s.group = SymbolRef::Group::V;
      else if (s.group == SymbolRef::Group::V)
        s.group = SymbolRef::Group::U;
      out.slots[t].coeffs.push_back(
          {s, {coeffs[0].with_swapped_users(), coeffs[1].with_swapped_users()}});
    }
  }
  out.ledger.available.resize(plan.ledger.available.size());
  for (std::size_t t = 0; t < plan.ledger.available.size(); ++t)
    for (const auto& [user, ref] : plan.ledger.available[t])
      out.ledger.available[t].insert({user == 1 ? 2 : 1, ref});
  return out;
}

std::string plan_to_json(const SchemePlan& plan) {
  nlohmann::ordered_json j;
  j["scheme"] = scheme_name(plan.id);
  j["n_b"] = plan.n_b;
  j["n1"] = plan.n1;
  j["n2"] = plan.n2;
  j["nq"] = plan.nq;
  j["d1"] = format_rational(plan.d1());
  j["d2"] = format_rational(plan.d2());
  nlohmann::ordered_json slots = nlohmann::ordered_json::array();
  for (const SlotRule& slot : plan.slots) {
    nlohmann::ordered_json js;
    js["state"] = state_code(slot.state);
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    for (const auto& [sym, c] : slot.coeffs) {
      const char* g = sym.group == SymbolRef::Group::U   ? "u"
                      : sym.group == SymbolRef::Group::V ? "v"
                                                         : "q";
      coeffs[g + std::to_string(sym.index)] = {c[0].str(), c[1].str()};
    }
    js["coeffs"] = coeffs;
    slots.push_back(js);
  }
  j["slots"] = slots;
  nlohmann::ordered_json ledger = nlohmann::ordered_json::array();
  for (const auto& avail : plan.ledger.available) {
    nlohmann::ordered_json ja = nlohmann::ordered_json::array();
    for (const auto& [user, ref] : avail) ja.push_back({user, ref});
    ledger.push_back(ja);
  }
  j["ledger"] = ledger;
  return j.dump(2);
}

}  // namespace sdof
