#include "sdof/expr.hpp"

#include <algorithm>

namespace sdof {

Expr Expr::constant(const Rat& c) {
  Expr e;
  if (c != Rat(0)) e.terms_.push_back({c, {}});
  return e;
}

Expr Expr::entry(int user, int entry, int slot) {
  Expr e;
  e.terms_.push_back({Rat(1), {ChannelRef{user, entry, slot}}});
  return e;
}

void Expr::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.factors < b.factors; });
  std::vector<Term> merged;
  for (Term& t : terms_) {
    if (!merged.empty() && merged.back().factors == t.factors)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == Rat(0); });
  terms_ = std::move(merged);
}

Expr& Expr::operator+=(const Expr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  for (const Term& t : other.terms_) terms_.push_back({-t.coeff, t.factors});
  normalize();
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Expr::Term t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      std::sort(t.factors.begin(), t.factors.end());
      out.terms_.push_back(std::move(t));
    }
  }
  out.normalize();
  return out;
}

Expr operator*(const Rat& c, Expr e) {
  if (c == Rat(0)) return Expr{};
  for (auto& t : e.terms_) t.coeff *= c;
  return e;
}

Complex Expr::eval(const ChannelBlock& block) const {
  Complex sum = 0.0;
  for (const Term& t : terms_) {
    Complex prod = rat_to_double(t.coeff);
    for (const ChannelRef& r : t.factors) prod *= block.row(r.user, r.slot)(r.entry);
    sum += prod;
  }
  return sum;
}

void Expr::collect_refs(std::set<std::pair<int, int>>& out) const {
  for (const Term& t : terms_)
    for (const ChannelRef& r : t.factors) out.emplace(r.user, r.slot);
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i) s += " + ";
    s += format_rational(t.coeff);
    for (const ChannelRef& r : t.factors) {
      s += "*h" + std::to_string(r.user) + std::to_string(r.entry + 1) + "(" +
           std::to_string(r.slot) + ")";
    }
  }
  return s;
}

Expr Expr::with_swapped_users() const {
  Expr out = *this;
  for (Term& t : out.terms_) {
    for (ChannelRef& r : t.factors) r.user = r.user == 1 ? 2 : 1;
    std::sort(t.factors.begin(), t.factors.end());
  }
  out.normalize();
  return out;
}

}  // namespace sdof
