#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdof/rational.hpp"

namespace sdof {

// CSIT form of one user: perfect/instantaneous, delayed, or none.
// Ordered P > D > N for dominance checks (more CSIT can stand in for less).
enum class CsitForm : std::uint8_t { P = 0, D = 1, N = 2 };

constexpr std::array<CsitForm, 3> kAllForms{CsitForm::P, CsitForm::D, CsitForm::N};

char form_letter(CsitForm f);
CsitForm parse_form(char c);

// f dominates g if f provides at least as much CSIT as g.
inline bool dominates(CsitForm f, CsitForm g) {
  return static_cast<int>(f) <= static_cast<int>(g);
}

// Joint CSIT state (I1, I2): user 1's form, user 2's form.
struct CsitState {
  CsitForm i1;
  CsitForm i2;

  friend bool operator==(const CsitState&, const CsitState&) = default;
  friend auto operator<=>(const CsitState&, const CsitState&) = default;
};

inline CsitState swapped(CsitState s) { return {s.i2, s.i1}; }
inline bool dominates(CsitState a, CsitState b) {
  return dominates(a.i1, b.i1) && dominates(a.i2, b.i2);
}

std::string state_code(CsitState s);          // "PD", "NN", ...
CsitState parse_state(const std::string& s);  // inverse of state_code

inline int state_index(CsitState s) {
  return 3 * static_cast<int>(s.i1) + static_cast<int>(s.i2);
}

// Canonical enumeration order: PP, PD, PN, DP, DD, DN, NP, ND, NN.
extern const std::array<CsitState, 9> kAllStates;

constexpr CsitState kPP{CsitForm::P, CsitForm::P};
constexpr CsitState kPD{CsitForm::P, CsitForm::D};
constexpr CsitState kPN{CsitForm::P, CsitForm::N};
constexpr CsitState kDP{CsitForm::D, CsitForm::P};
constexpr CsitState kDD{CsitForm::D, CsitForm::D};
constexpr CsitState kDN{CsitForm::D, CsitForm::N};
constexpr CsitState kNP{CsitForm::N, CsitForm::P};
constexpr CsitState kND{CsitForm::N, CsitForm::D};
constexpr CsitState kNN{CsitForm::N, CsitForm::N};

// Per-user marginal fractions of P, D and N time.
struct Marginals {
  Rat p{0};
  Rat d{0};
  Rat n{0};
};

enum class EnhancementRule {
  NToD,                 // every N form becomes D
  DToP,                 // every D form becomes P
  AllImperfectToDD,     // states without any P become DD
  AllPStatesToPPRestDD, // states with a P become PP, the rest DD
  NonNNToPP,            // every state except NN becomes PP
};

// Validated 9-state pmf with the symmetry assumption
// lambda_{I1 I2} = lambda_{I2 I1}. Immutable after construction.
class StatePmf {
 public:
  // Missing states default to zero mass. Throws SdofError with
  // NegativeMass / SumNotOne / AsymmetricPmf.
  static StatePmf validate(const std::map<CsitState, Rat>& raw);
  static StatePmf validate(const std::array<Rat, 9>& raw);

  const Rat& mass(CsitState s) const { return mass_[state_index(s)]; }
  const std::array<Rat, 9>& masses() const { return mass_; }

  // Sparse view in canonical state order, zero entries skipped.
  std::vector<std::pair<CsitState, Rat>> support() const;

  friend bool operator==(const StatePmf&, const StatePmf&) = default;

 private:
  StatePmf() = default;
  std::array<Rat, 9> mass_{};
};

Marginals marginals(const StatePmf& pmf);

// Elementwise state substitution followed by mass merging.
StatePmf enhance(const StatePmf& pmf, EnhancementRule rule);

}  // namespace sdof
