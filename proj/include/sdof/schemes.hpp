#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdof/expr.hpp"
#include "sdof/rational.hpp"
#include "sdof/state.hpp"

namespace sdof {

enum class SchemeKind {
  S2,        // PP, (1, 1)
  S1_32,     // PD/DP, (3/4, 3/4)
  S2_32,     // PD/DP/PN/NP, (3/4, 3/4)
  S1_43,     // PD/DP/NN, (2/3, 2/3)
  S2_43,     // PN/NP/DD, (2/3, 2/3)
  S1_1,      // DD, (1/2, 1/2)
  S2_1,      // DD/NN, (1/2, 1/2)
  S3_1,      // DN/ND, (2n/(4n+1), 2n/(4n+1)) -> (1/2, 1/2)
  S1_23,     // DD, (2/3, 0)
  S2_23,     // DD/NN, (2/3, 0)
  S3_23,     // DN/ND/NN, (2/3, 0)
  ZF_10,     // NP, (1, 0): zero-force user 1's symbol at receiver 2
  ZF_01,     // PN, (0, 1)
  PD_10,     // PD, (1, 0): artificial noise orthogonal to user 1's channel
  PD_01,     // PD, (0, 1)
  DN_half_0, // DN, (1/2, 0)
  DN_0_half, // DN, (0, 1/2)
};

constexpr std::array<SchemeKind, 17> kAllSchemeKinds{
    SchemeKind::S2,    SchemeKind::S1_32, SchemeKind::S2_32,     SchemeKind::S1_43,
    SchemeKind::S2_43, SchemeKind::S1_1,  SchemeKind::S2_1,      SchemeKind::S3_1,
    SchemeKind::S1_23, SchemeKind::S2_23, SchemeKind::S3_23,     SchemeKind::ZF_10,
    SchemeKind::ZF_01, SchemeKind::PD_10, SchemeKind::PD_01,     SchemeKind::DN_half_0,
    SchemeKind::DN_0_half};

struct SchemeId {
  SchemeKind kind;
  int n = 0;  // block parameter, S3_1 only (n >= 1); 0 denotes the family entry
  friend bool operator==(const SchemeId&, const SchemeId&) = default;
  friend auto operator<=>(const SchemeId&, const SchemeId&) = default;
};

std::string scheme_name(SchemeId id);             // "S1_32", "S3_1(n=2)", ...
SchemeId parse_scheme(const std::string& name, int n = 0);

struct CatalogEntry {
  SchemeId id;
  std::vector<std::pair<CsitState, Rat>> states;  // state fractions
  Rat d1;
  Rat d2;
};

// All Table-1 schemes plus the zero-forcing / fixed-state helpers, with exact
// rational pairs. The S3_1 entry carries its limiting pair (1/2, 1/2).
std::vector<CatalogEntry> catalog();
CatalogEntry catalog_entry(SchemeId id);

// The d.o.f. pair a concrete plan must deliver; differs from the catalog only
// for S3_1 at finite n, where it is (2n/(4n+1), 2n/(4n+1)).
std::pair<Rat, Rat> expected_pair(SchemeId id);

// Minimal CSIT a scheme actually consumes on slots labelled `nominal`;
// a pmf state may donate budget to the slot iff it dominates this.
CsitState scheme_requirement(SchemeKind kind, CsitState nominal);

struct SymbolRef {
  enum class Group { U, V, Q };
  Group group;
  int index;
  friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
};

// Transmit rule for one slot: X(t) = sum_s coeff_s(t) * symbol_s, with each
// coefficient a 2-vector of channel-entry polynomials.
struct SlotRule {
  CsitState state;
  std::vector<std::pair<SymbolRef, std::array<Expr, 2>>> coeffs;
};

// Which channel rows the transmitter may reference while transmitting slot t.
// P at (user, t) contributes (user, t) at t itself; D contributes a past row
// strictly later (by default the current row from t+1; S3_1 defers some
// deliveries by a whole block).
struct CsitLedger {
  std::vector<std::set<std::pair<int, int>>> available;  // per slot: (user, slot)
  bool has(int slot, int user, int ref_slot) const {
    return available[slot].count({user, ref_slot}) > 0;
  }
};

struct SchemePlan {
  SchemeId id;
  int n_b = 0;
  int n1 = 0;
  int n2 = 0;
  int nq = 0;
  std::vector<SlotRule> slots;
  CsitLedger ledger;

  int n_symbols() const { return n1 + n2 + nq; }
  int column_of(SymbolRef s) const;
  Rat d1() const { return Rat(n1, n_b); }
  Rat d2() const { return Rat(n2, n_b); }
  std::vector<std::pair<CsitState, Rat>> state_fractions() const;
};

// Builds the slot-by-slot plan for a scheme. S3_1 requires n >= 1.
SchemePlan build_plan(SchemeId id);

struct CsitViolation {
  int slot;
  int user;
  int ref_slot;
  friend bool operator==(const CsitViolation&, const CsitViolation&) = default;
};

// Empty iff every channel reference in every slot's coefficients is available
// in the ledger at that slot. Violations are data, not exceptions.
std::vector<CsitViolation> validate_csit(const SchemePlan& plan);

// User-swap involution: exchanges receiver roles, states and channel
// references; the result of swapping twice is the original plan.
SchemePlan swap_users(const SchemePlan& plan);

std::string plan_to_json(const SchemePlan& plan);

}  // namespace sdof
