#include <array>
#include <map>
#include <random>

#include "doctest.h"
#include "sdof/error.hpp"
#include "sdof/state.hpp"

using namespace sdof;

namespace {

StatePmf pmf_of(std::initializer_list<std::pair<CsitState, Rat>> init) {
  std::map<CsitState, Rat> m;
  for (const auto& [s, r] : init) m[s] = r;
  return StatePmf::validate(m);
}

}  // namespace

TEST_CASE("validate_pmf accepts the alternating PD/DP example") {
  const StatePmf pmf = pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}});
  CHECK(pmf.mass(kPD) == Rat(1, 2));
  CHECK(pmf.mass(kPP) == Rat(0));
}

TEST_CASE("validate_pmf accepts a degenerate single state") {
  const StatePmf pmf = pmf_of({{kPP, Rat(1)}});
  CHECK(pmf.mass(kPP) == Rat(1));
}

TEST_CASE("validate_pmf rejects asymmetric masses") {
  std::map<CsitState, Rat> raw{{kPD, Rat(1, 2)}, {kDP, Rat(1, 4)}, {kDD, Rat(1, 4)}};
  CHECK_THROWS_WITH_AS(StatePmf::validate(raw), doctest::Contains("AsymmetricPmf"),
                       SdofError);
  try {
    StatePmf::validate(raw);
  } catch (const SdofError& e) {
    CHECK(e.code() == Errc::AsymmetricPmf);
  }
}

TEST_CASE("validate_pmf rejects bad totals and negative mass") {
  std::map<CsitState, Rat> short_sum{{kPD, Rat(1, 2)}, {kDP, Rat(1, 4)}};
  CHECK_THROWS_AS(StatePmf::validate(short_sum), SdofError);
  std::map<CsitState, Rat> negative{{kPP, Rat(3, 2)}, {kDD, Rat(-1, 2)}};
  try {
    StatePmf::validate(negative);
    CHECK(false);
  } catch (const SdofError& e) {
    CHECK(e.code() == Errc::NegativeMass);
  }
}

TEST_CASE("marginals of the paper examples") {
  const Marginals a = marginals(pmf_of({{kPD, Rat(1, 2)}, {kDP, Rat(1, 2)}}));
  CHECK(a.p == Rat(1, 2));
  CHECK(a.d == Rat(1, 2));
  CHECK(a.n == Rat(0));

  const Marginals b =
      marginals(pmf_of({{kPD, Rat(2, 5)}, {kDP, Rat(2, 5)}, {kNN, Rat(1, 5)}}));
  CHECK(b.p == Rat(2, 5));
  CHECK(b.d == Rat(2, 5));
  CHECK(b.n == Rat(1, 5));

  const Marginals c =
      marginals(pmf_of({{kPN, Rat(1, 3)}, {kNP, Rat(1, 3)}, {kDD, Rat(1, 3)}}));
  CHECK(c.p == Rat(1, 3));
  CHECK(c.d == Rat(1, 3));
  CHECK(c.n == Rat(1, 3));
}

TEST_CASE("marginals always sum to one on random symmetric pmfs") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    // Random symmetric composition over denominator 48.
    std::array<long long, 6> parts{};  // PP, PD, PN, DD, DN, NN
    long long remaining = 48;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      parts[i] = static_cast<long long>(gen() % (remaining + 1));
      remaining -= parts[i];
    }
    parts.back() = remaining;
    // Off-diagonal masses split evenly; odd counts go to the diagonal.
    std::map<CsitState, Rat> raw;
    raw[kPP] = Rat(parts[0], 48);
    raw[kPD] = raw[kDP] = Rat(parts[1] / 2, 48);
    raw[kPN] = raw[kNP] = Rat(parts[2] / 2, 48);
    raw[kDD] = Rat(parts[3] + (parts[1] % 2), 48);
    raw[kDN] = raw[kND] = Rat(parts[4] / 2, 48);
    raw[kNN] = Rat(parts[5] + (parts[2] % 2) + (parts[4] % 2), 48);
    const StatePmf pmf = StatePmf::validate(raw);
    const Marginals m = marginals(pmf);
    CHECK(m.p + m.d + m.n == Rat(1));
    CHECK(m.p >= Rat(0));
    CHECK(m.d >= Rat(0));
    CHECK(m.n >= Rat(0));
  }
}

TEST_CASE("enhance N_to_D merges into the expected states") {
  const StatePmf pmf = pmf_of({{kPD, Rat(2, 5)}, {kDP, Rat(2, 5)}, {kNN, Rat(1, 5)}});
  const StatePmf enhanced = enhance(pmf, EnhancementRule::NToD);
  CHECK(enhanced.mass(kPD) == Rat(2, 5));
  CHECK(enhanced.mass(kDP) == Rat(2, 5));
  CHECK(enhanced.mass(kDD) == Rat(1, 5));
  CHECK(enhanced.mass(kNN) == Rat(0));
}

TEST_CASE("enhance D_to_P merges PD and DP into PP") {
  const StatePmf pmf = pmf_of({{kPD, Rat(1, 5)}, {kDP, Rat(1, 5)}, {kNN, Rat(3, 5)}});
  const StatePmf enhanced = enhance(pmf, EnhancementRule::DToP);
  CHECK(enhanced.mass(kPP) == Rat(2, 5));
  CHECK(enhanced.mass(kNN) == Rat(3, 5));
}

TEST_CASE("enhance fixed point on a perfect-CSIT pmf") {
  const StatePmf pmf = pmf_of({{kPP, Rat(1)}});
  CHECK(enhance(pmf, EnhancementRule::NToD) == pmf);
  CHECK(enhance(pmf, EnhancementRule::DToP) == pmf);
  CHECK(enhance(pmf, EnhancementRule::NonNNToPP) == pmf);
}

TEST_CASE("converse enhancement maps") {
  const StatePmf pmf = pmf_of({{kPD, Rat(1, 4)},
                               {kDP, Rat(1, 4)},
                               {kDN, Rat(1, 8)},
                               {kND, Rat(1, 8)},
                               {kNN, Rat(1, 4)}});
  const StatePmf single_user = enhance(pmf, EnhancementRule::AllPStatesToPPRestDD);
  CHECK(single_user.mass(kPP) == Rat(1, 2));
  CHECK(single_user.mass(kDD) == Rat(1, 2));

  const StatePmf imperfect = enhance(pmf, EnhancementRule::AllImperfectToDD);
  CHECK(imperfect.mass(kPD) == Rat(1, 4));
  CHECK(imperfect.mass(kDD) == Rat(1, 2));

  const StatePmf no_feedback = enhance(pmf, EnhancementRule::NonNNToPP);
  CHECK(no_feedback.mass(kPP) == Rat(3, 4));
  CHECK(no_feedback.mass(kNN) == Rat(1, 4));
}

TEST_CASE("state parsing round trips") {
  for (CsitState s : kAllStates) CHECK(parse_state(state_code(s)) == s);
  CHECK_THROWS_AS(parse_state("PX"), SdofError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-1/2") == Rat(-1, 2));
  CHECK(parse_rational("2") == Rat(2));
  CHECK(format_rational(Rat(3, 4)) == "3/4");
  CHECK(format_rational(Rat(2)) == "2");
  CHECK_THROWS_AS(parse_rational("x"), SdofError);
}
