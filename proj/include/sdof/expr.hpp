#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/rational.hpp"

namespace sdof {

// One channel entry h_{user,entry}(slot), 0-based slot, entry in {0, 1}.
struct ChannelRef {
  int user;   // 1 or 2
  int entry;  // antenna index
  int slot;
  friend bool operator==(const ChannelRef&, const ChannelRef&) = default;
  friend auto operator<=>(const ChannelRef&, const ChannelRef&) = default;
};

// Polynomial in channel entries with exact rational coefficients. Transmit
// coefficients stay in this form so one source of truth feeds both the CSIT
// validator (which needs the referenced (user, slot) pairs) and the numeric
// transfer-model evaluation.
class Expr {
 public:
  Expr() = default;

  static Expr constant(const Rat& c);
  static Expr entry(int user, int entry, int slot);

  bool is_zero() const { return terms_.empty(); }

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const Rat& c, Expr e);

  Complex eval(const ChannelBlock& block) const;
  void collect_refs(std::set<std::pair<int, int>>& out) const;  // (user, slot)
  std::string str() const;

  // Remaps for the user-swap involution: user 1 <-> 2 on every reference.
  Expr with_swapped_users() const;

 private:
  struct Term {
    Rat coeff;
    std::vector<ChannelRef> factors;  // sorted
  };
  void normalize();
  std::vector<Term> terms_;
};

}  // namespace sdof
