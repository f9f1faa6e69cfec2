#include "sdof/metrics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "sdof/error.hpp"

namespace sdof {

namespace {

// log det(I + P * M M^H) through the eigenvalues of the Gram matrix; sizes
// here stay small (block lengths <= ~25) and P up to 1e8 is well conditioned.
double log_det_gram(const Eigen::MatrixXcd& m, double power) {
  if (m.cols() == 0 || m.rows() == 0) return 0.0;
  const Eigen::MatrixXcd gram = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = std::max(es.eigenvalues()(i), 0.0);
    sum += std::log1p(power * lambda);
  }
  return sum;
}

Eigen::MatrixXcd drop_group(const TransferModel& model, int side, SymbolGroup group) {
  const Eigen::MatrixXcd& m = model.side(side);
  const int n_keep = model.cols() - (group == SymbolGroup::U ? model.n1 : model.n2);
  Eigen::MatrixXcd out(m.rows(), n_keep);
  if (group == SymbolGroup::U) {
    out << m.middleCols(model.n1, model.n2 + model.nq);
  } else {
    out.leftCols(model.n1) = m.middleCols(0, model.n1);
    out.rightCols(model.nq) = m.middleCols(model.n1 + model.n2, model.nq);
  }
  return out;
}

int group_width(const TransferModel& model, SymbolGroup group) {
  return group == SymbolGroup::U ? model.n1 : model.n2;
}

}  // namespace

double gaussian_mi(const MiQuery& q) {
  if (q.model == nullptr || q.power <= 0.0)
    fail(Errc::InvalidParameter, "gaussian_mi needs a model and positive power");
  if (group_width(*q.model, q.group) == 0)
    fail(Errc::BadGroup, "message group has no columns");
  const double full = log_det_gram(q.model->side(q.side), q.power);
  const double rest = log_det_gram(drop_group(*q.model, q.side, q.group), q.power);
  const double mi = full - rest;
  return mi < 0.0 && mi > -1e-12 ? 0.0 : mi;  // clamp tiny negative round-off
}

DofEstimate dof_estimate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4)
    fail(Errc::GridTooSmall, "need at least 4 grid points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].first <= points[i - 1].first)
      fail(Errc::GridTooSmall, "powers must be strictly increasing");
  const double decades = std::log10(points.back().first / points.front().first);
  if (decades < 4.0 - 1e-9)
    fail(Errc::GridTooSmall, "grid must span at least 4 decades");

  DofEstimate est;
  for (const auto& [p, v] : points) est.grid.emplace_back(std::log(p), v);

  const std::size_t start = points.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(est.grid.size() - start);
  for (std::size_t i = start; i < est.grid.size(); ++i) {
    sx += est.grid[i].first;
    sy += est.grid[i].second;
    sxx += est.grid[i].first * est.grid[i].first;
    sxy += est.grid[i].first * est.grid[i].second;
  }
  const double denom = n * sxx - sx * sx;
  est.slope = (n * sxy - sx * sy) / denom;
  est.intercept = (sy - est.slope * sx) / n;
  for (std::size_t i = start; i < est.grid.size(); ++i) {
    const double fit = est.slope * est.grid[i].first + est.intercept;
    est.residual = std::max(est.residual, std::abs(fit - est.grid[i].second));
  }
  return est;
}

SchemeSweep sweep_scheme(const SchemePlan& plan, const SweepSettings& settings) {
  if (settings.grid.size() < 4)
    fail(Errc::GridTooSmall, "need at least 4 grid points");
  SchemeSweep sweep;
  sweep.id = plan.id;
  sweep.settings = settings;
  const std::size_t np = settings.grid.size();
  sweep.mi_u_own.assign(np, 0.0);
  sweep.mi_u_cross.assign(np, 0.0);
  sweep.mi_v_own.assign(np, 0.0);
  sweep.mi_v_cross.assign(np, 0.0);

  for (int b = 0; b < settings.n_blocks; ++b) {
    const ChannelBlock block =
        sample_block(plan.n_b, settings.seed + static_cast<std::uint64_t>(b));
    const TransferModel model = transfer_model(plan, block);
    if (decodable(model, 1) && decodable(model, 2)) sweep.decodable_blocks++;
    for (std::size_t ip = 0; ip < np; ++ip) {
      const double p = settings.grid[ip];
      if (plan.n1 > 0) {
        sweep.mi_u_own[ip] += gaussian_mi({&model, SymbolGroup::U, 1, p});
        sweep.mi_u_cross[ip] += gaussian_mi({&model, SymbolGroup::U, 2, p});
      }
      if (plan.n2 > 0) {
        sweep.mi_v_own[ip] += gaussian_mi({&model, SymbolGroup::V, 2, p});
        sweep.mi_v_cross[ip] += gaussian_mi({&model, SymbolGroup::V, 1, p});
      }
    }
  }
  for (std::size_t ip = 0; ip < np; ++ip) {
    const double inv = 1.0 / settings.n_blocks;
    sweep.mi_u_own[ip] *= inv;
    sweep.mi_u_cross[ip] *= inv;
    sweep.mi_v_own[ip] *= inv;
    sweep.mi_v_cross[ip] *= inv;
  }

  auto slope_of = [&](const std::vector<double>& mi) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t ip = 0; ip < np; ++ip) pts.emplace_back(settings.grid[ip], mi[ip]);
    return dof_estimate(pts).slope;
  };
  sweep.message.d1 = plan.n1 > 0 ? slope_of(sweep.mi_u_own) / plan.n_b : 0.0;
  sweep.message.d2 = plan.n2 > 0 ? slope_of(sweep.mi_v_own) / plan.n_b : 0.0;
  sweep.leakage.d1 = plan.n1 > 0 ? slope_of(sweep.mi_u_cross) : 0.0;
  sweep.leakage.d2 = plan.n2 > 0 ? slope_of(sweep.mi_v_cross) : 0.0;
  return sweep;
}

DofPair leakage_dof(const SchemePlan& plan, const SweepSettings& settings) {
  return sweep_scheme(plan, settings).leakage;
}

DofPair message_dof(const SchemePlan& plan, const SweepSettings& settings) {
  return sweep_scheme(plan, settings).message;
}

}  // namespace sdof
