#include <cmath>
#include <random>

#include "doctest.h"
#include "sdof/error.hpp"
#include "sdof/metrics.hpp"

using namespace sdof;

namespace {

// Hand-built models for closed-form checks.
TransferModel model_from(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, int n1,
                         int n2, int nq) {
  TransferModel model;
  model.n1 = n1;
  model.n2 = n2;
  model.nq = nq;
  model.m1 = m1;
  model.m2 = m2;
  model.slot_gain.assign(m1.rows(), 1.0);
  return model;
}

}  // namespace

TEST_CASE("gaussian_mi closed forms") {
  // z = u + q: I(u; z) = log((1+2P)/(1+P)), approaching log 2.
  Eigen::MatrixXcd row(1, 2);
  row << 1.0, 1.0;
  const TransferModel uplusq = model_from(row, row, 1, 0, 1);
  for (double p : {1.0, 10.0, 1e3, 1e6}) {
    const double expect = std::log((1.0 + 2.0 * p) / (1.0 + p));
    CHECK(gaussian_mi({&uplusq, SymbolGroup::U, 2, p}) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(gaussian_mi({&uplusq, SymbolGroup::U, 2, 1e6}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-5));

  // y = u alone: capacity form log(1 + P).
  Eigen::MatrixXcd single(1, 1);
  single << 1.0;
  const TransferModel direct = model_from(single, single, 1, 0, 0);
  for (double p : {0.5, 7.0, 1e4})
    CHECK(gaussian_mi({&direct, SymbolGroup::U, 1, p}) ==
          doctest::Approx(std::log1p(p)).epsilon(1e-12));

  // Group with all-zero columns leaks nothing, exactly.
  Eigen::MatrixXcd m1(1, 2), m2(1, 2);
  m1 << 1.0, 0.0;
  m2 << 0.0, 1.0;
  const TransferModel zf = model_from(m1, m2, 1, 1, 0);
  CHECK(gaussian_mi({&zf, SymbolGroup::U, 2, 100.0}) == 0.0);

  // Empty group is an error.
  const TransferModel no_v = model_from(single, single, 1, 0, 0);
  CHECK_THROWS_AS(gaussian_mi({&no_v, SymbolGroup::V, 1, 10.0}), SdofError);
}

TEST_CASE("gaussian_mi is nonnegative and monotone in the group") {
  std::mt19937_64 seeds(3);
  for (int trial = 0; trial < 50; ++trial) {
    const ChannelBlock block = sample_block(3, seeds());
    Eigen::MatrixXcd m(3, 4);
    for (int r = 0; r < 3; ++r) {
      m(r, 0) = block.h1[r](0);
      m(r, 1) = block.h1[r](1);
      m(r, 2) = block.h2[r](0);
      m(r, 3) = block.h2[r](1);
    }
    // Same matrix, two groupings: u = first column vs u = first two columns.
    const TransferModel narrow = model_from(m, m, 1, 1, 2);
    const TransferModel wide = model_from(m, m, 2, 1, 1);
    for (double p : {1.0, 100.0, 1e6}) {
      const double small_mi = gaussian_mi({&narrow, SymbolGroup::U, 1, p});
      const double big_mi = gaussian_mi({&wide, SymbolGroup::U, 1, p});
      CHECK(small_mi >= 0.0);
      CHECK(big_mi >= small_mi - 1e-12);
    }
  }
}

TEST_CASE("chain rule on random 3x3 models") {
  std::mt19937_64 seeds(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ChannelBlock block = sample_block(3, seeds());
    Eigen::MatrixXcd m(3, 3);
    for (int r = 0; r < 3; ++r) {
      m(r, 0) = block.h1[r](0);
      m(r, 1) = block.h1[r](1);
      m(r, 2) = block.h2[r](0);
    }
    const double p = 250.0;
    // I(all; out) = I(u; out | rest) + log det(I + P M_v M_v^H) with u = col 0.
    const TransferModel joint = model_from(m, m, 3, 0, 0);
    const TransferModel split_u = model_from(m, m, 1, 2, 0);
    const double lhs = gaussian_mi({&joint, SymbolGroup::U, 1, p});
    Eigen::MatrixXcd mv = m.rightCols(2);
    const TransferModel v_only = model_from(mv, mv, 2, 0, 0);
    const double rhs = gaussian_mi({&v_only, SymbolGroup::U, 1, p}) +
                       gaussian_mi({&split_u, SymbolGroup::U, 1, p});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("dof_estimate fits exact lines") {
  std::vector<std::pair<double, double>> log_line, flat, steep;
  for (double p : {1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8}) {
    log_line.emplace_back(p, std::log(p));
    flat.emplace_back(p, std::log(2.0));
    steep.emplace_back(p, 3.0 * std::log(p) + 1.25);
  }
  CHECK(dof_estimate(log_line).slope == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dof_estimate(flat).slope == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(dof_estimate(steep).slope == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(dof_estimate(steep).residual <= 1e-9);
}

TEST_CASE("dof_estimate validates its grid") {
  std::vector<std::pair<double, double>> too_few{{1e2, 1.0}, {1e3, 2.0}, {1e4, 3.0}};
  CHECK_THROWS_AS(dof_estimate(too_few), SdofError);
  std::vector<std::pair<double, double>> narrow{
      {1e2, 1.0}, {2e2, 1.1}, {4e2, 1.2}, {8e2, 1.3}};
  CHECK_THROWS_AS(dof_estimate(narrow), SdofError);
  std::vector<std::pair<double, double>> unsorted{
      {1e2, 1.0}, {1e4, 1.1}, {1e3, 1.2}, {1e8, 1.3}};
  CHECK_THROWS_AS(dof_estimate(unsorted), SdofError);
}

TEST_CASE("zero-forcing scheme leaks exactly nothing") {
  const SchemePlan plan = build_plan({SchemeKind::S2});
  SweepSettings settings;
  settings.n_blocks = 25;
  const DofPair leak = leakage_dof(plan, settings);
  CHECK(leak.d1 == 0.0);
  CHECK(leak.d2 == 0.0);
  const DofPair msg = message_dof(plan, settings);
  CHECK(msg.d1 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(msg.d2 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("message and leakage slopes for representative schemes") {
  SweepSettings settings;
  settings.n_blocks = 60;
  settings.seed = 31;
  for (const SchemeId& id : std::vector<SchemeId>{{SchemeKind::S1_43},
                                                  {SchemeKind::S1_32},
                                                  {SchemeKind::S3_1, 1},
                                                  {SchemeKind::DN_0_half}}) {
    CAPTURE(scheme_name(id));
    const SchemePlan plan = build_plan(id);
    const SchemeSweep sweep = sweep_scheme(plan, settings);
    const auto [d1, d2] = expected_pair(id);
    CHECK(std::abs(sweep.message.d1 - rat_to_double(d1)) <= 0.05);
    CHECK(std::abs(sweep.message.d2 - rat_to_double(d2)) <= 0.05);
    CHECK(std::abs(sweep.leakage.d1) <= 0.05);
    CHECK(std::abs(sweep.leakage.d2) <= 0.05);
    CHECK(sweep.decodable_blocks == settings.n_blocks);
  }
}

TEST_CASE("Wyner rate consistency per block") {
  // slope(own MI) - slope(cross MI) >= n_i - 0.1 for each scheme.
  SweepSettings settings;
  settings.n_blocks = 40;
  settings.seed = 7;
  for (const SchemeId& id : std::vector<SchemeId>{{SchemeKind::S1_32},
                                                  {SchemeKind::S2_43},
                                                  {SchemeKind::S2_1}}) {
    CAPTURE(scheme_name(id));
    const SchemePlan plan = build_plan(id);
    const SchemeSweep sweep = sweep_scheme(plan, settings);
    const double own_slope_1 = sweep.message.d1 * plan.n_b;
    const double own_slope_2 = sweep.message.d2 * plan.n_b;
    CHECK(own_slope_1 - sweep.leakage.d1 >= plan.n1 - 0.1);
    CHECK(own_slope_2 - sweep.leakage.d2 >= plan.n2 - 0.1);
  }
}
