#include "sdof/state.hpp"

#include "sdof/error.hpp"

namespace sdof {

const std::array<CsitState, 9> kAllStates{kPP, kPD, kPN, kDP, kDD, kDN, kNP, kND, kNN};

char form_letter(CsitForm f) {
  switch (f) {
    case CsitForm::P: return 'P';
    case CsitForm::D: return 'D';
    case CsitForm::N: return 'N';
  }
  return '?';
}

CsitForm parse_form(char c) {
  switch (c) {
    case 'P': return CsitForm::P;
    case 'D': return CsitForm::D;
    case 'N': return CsitForm::N;
    default: fail(Errc::ParseError, std::string("bad CSIT form '") + c + "'");
  }
}

std::string state_code(CsitState s) {
  return std::string{form_letter(s.i1), form_letter(s.i2)};
}

CsitState parse_state(const std::string& s) {
  if (s.size() != 2) fail(Errc::ParseError, "bad CSIT state '" + s + "'");
  return {parse_form(s[0]), parse_form(s[1])};
}

StatePmf StatePmf::validate(const std::map<CsitState, Rat>& raw) {
  std::array<Rat, 9> m{};
  for (const auto& [state, value] : raw) m[state_index(state)] = value;
  return validate(m);
}

StatePmf StatePmf::validate(const std::array<Rat, 9>& raw) {
  Rat total{0};
  for (CsitState s : kAllStates) {
    const Rat& v = raw[state_index(s)];
    if (v < Rat(0))
      fail(Errc::NegativeMass, "state " + state_code(s) + " has mass " + format_rational(v));
    total += v;
  }
  if (total != Rat(1))
    fail(Errc::SumNotOne, "masses sum to " + format_rational(total));
  for (CsitState s : {kPD, kPN, kDN}) {
    const Rat& a = raw[state_index(s)];
    const Rat& b = raw[state_index(swapped(s))];
    if (a != b)
      fail(Errc::AsymmetricPmf, state_code(s) + "=" + format_rational(a) + " but " +
                                    state_code(swapped(s)) + "=" + format_rational(b));
  }
  StatePmf pmf;
  pmf.mass_ = raw;
  return pmf;
}

std::vector<std::pair<CsitState, Rat>> StatePmf::support() const {
  std::vector<std::pair<CsitState, Rat>> out;
  for (CsitState s : kAllStates)
    if (mass(s) != Rat(0)) out.emplace_back(s, mass(s));
  return out;
}

Marginals marginals(const StatePmf& pmf) {
  Marginals m;
  m.p = pmf.mass(kPP) + pmf.mass(kPD) + pmf.mass(kPN);
  m.d = pmf.mass(kPD) + pmf.mass(kDD) + pmf.mass(kDN);
  m.n = pmf.mass(kPN) + pmf.mass(kDN) + pmf.mass(kNN);
  return m;
}

namespace {

CsitForm map_form(CsitForm f, CsitForm from, CsitForm to) { return f == from ? to : f; }

CsitState enhance_state(CsitState s, EnhancementRule rule) {
  const bool has_p = s.i1 == CsitForm::P || s.i2 == CsitForm::P;
  switch (rule) {
    case EnhancementRule::NToD:
      return {map_form(s.i1, CsitForm::N, CsitForm::D), map_form(s.i2, CsitForm::N, CsitForm::D)};
    case EnhancementRule::DToP:
      return {map_form(s.i1, CsitForm::D, CsitForm::P), map_form(s.i2, CsitForm::D, CsitForm::P)};
    case EnhancementRule::AllImperfectToDD:
      return has_p ? s : kDD;
    case EnhancementRule::AllPStatesToPPRestDD:
      return has_p ? kPP : kDD;
    case EnhancementRule::NonNNToPP:
      return s == kNN ? kNN : kPP;
  }
  return s;
}

}  // namespace

StatePmf enhance(const StatePmf& pmf, EnhancementRule rule) {
  std::array<Rat, 9> merged{};
  for (CsitState s : kAllStates)
    merged[state_index(enhance_state(s, rule))] += pmf.mass(s);
  return StatePmf::validate(merged);
}

}  // namespace sdof
