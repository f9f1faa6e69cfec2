#include "sdof/transfer.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "sdof/error.hpp"

namespace sdof {

namespace {

constexpr double kRankTol = 1e-8;  // relative to the largest singular value

// Rank with an absolute cutoff; callers derive the cutoff from the largest
// singular value of the enclosing matrix so that numerically-zero blocks
// (residues of exact beam nulling) do not count as full rank.
int rank_below(const Eigen::MatrixXcd& m, double cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

double largest_sv(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

// Least-squares solve with a relative-threshold pseudoinverse.
Eigen::VectorXcd solve_ls(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTol);
  return svd.solve(b);
}

}  // namespace

Eigen::MatrixXcd TransferModel::message_columns(int user) const {
  const Eigen::MatrixXcd& m = side(user);
  return user == 1 ? m.middleCols(0, n1) : m.middleCols(n1, n2);
}

Eigen::MatrixXcd TransferModel::nuisance_columns(int user) const {
  const Eigen::MatrixXcd& m = side(user);
  Eigen::MatrixXcd out(m.rows(), cols() - (user == 1 ? n1 : n2));
  if (user == 1) {
    out << m.middleCols(n1, n2 + nq);
  } else {
    out.leftCols(n1) = m.middleCols(0, n1);
    out.rightCols(nq) = m.middleCols(n1 + n2, nq);
  }
  return out;
}

namespace {

std::vector<Eigen::Matrix2Xcd> slot_coefficients_impl(const SchemePlan& plan,
                                                      const ChannelBlock& block,
                                                      std::vector<double>* gains) {
  if (block.n_slots != plan.n_b)
    fail(Errc::LengthMismatch, "block length " + std::to_string(block.n_slots) +
                                   " vs plan length " + std::to_string(plan.n_b));
  std::vector<Eigen::Matrix2Xcd> out(plan.n_b);
  if (gains) gains->assign(plan.n_b, 1.0);
  for (int t = 0; t < plan.n_b; ++t) {
    Eigen::Matrix2Xcd c = Eigen::Matrix2Xcd::Zero(2, plan.n_symbols());
    for (const auto& [sym, coeffs] : plan.slots[t].coeffs) {
      const int col = plan.column_of(sym);
      c(0, col) += coeffs[0].eval(block);
      c(1, col) += coeffs[1].eval(block);
    }
    const double gain = c.norm();  // Frobenius; E||X||^2 = P * gain^2
    if (gain > 0.0) {
      c /= gain;
      if (gains) (*gains)[t] = gain;
    }
    out[t] = std::move(c);
  }
  return out;
}

}  // namespace

std::vector<Eigen::Matrix2Xcd> slot_coefficients(const SchemePlan& plan,
                                                 const ChannelBlock& block) {
  return slot_coefficients_impl(plan, block, nullptr);
}

std::vector<Eigen::Vector2cd> realize_transmit(const SchemePlan& plan,
                                               const ChannelBlock& block,
                                               const Eigen::VectorXcd& symbols) {
  if (symbols.size() != plan.n_symbols())
    fail(Errc::LengthMismatch, "symbol vector size");
  const auto coeffs = slot_coefficients(plan, block);
  std::vector<Eigen::Vector2cd> x(plan.n_b);
  for (int t = 0; t < plan.n_b; ++t) x[t] = coeffs[t] * symbols;
  return x;
}

TransferModel transfer_model(const SchemePlan& plan, const ChannelBlock& block) {
  if (!validate_csit(plan).empty())
    fail(Errc::CsitViolation, "plan references unavailable CSIT");
  TransferModel model;
  const auto coeffs = slot_coefficients_impl(plan, block, &model.slot_gain);
  model.n1 = plan.n1;
  model.n2 = plan.n2;
  model.nq = plan.nq;
  model.m1.resize(plan.n_b, plan.n_symbols());
  model.m2.resize(plan.n_b, plan.n_symbols());
  for (int t = 0; t < plan.n_b; ++t) {
    model.m1.row(t) = block.h1[t] * coeffs[t];
    model.m2.row(t) = block.h2[t] * coeffs[t];
  }
  return model;
}

bool decodable(const TransferModel& model, int user) {
  const int n_user = user == 1 ? model.n1 : model.n2;
  if (n_user == 0) return true;
  const Eigen::MatrixXcd b = model.nuisance_columns(user);
  Eigen::MatrixXcd ab(model.side(user).rows(), n_user + b.cols());
  ab << model.message_columns(user), b;
  const double cutoff = kRankTol * largest_sv(ab);
  if (cutoff == 0.0) return false;
  return rank_below(ab, cutoff) == n_user + rank_below(b, cutoff);
}

BlockRun run_block(const SchemePlan& plan, const ChannelBlock& block,
                   const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, double power,
                   std::optional<std::uint64_t> noise_seed) {
  if (u.size() != plan.n1 || v.size() != plan.n2)
    fail(Errc::LengthMismatch, "message symbol counts");
  const TransferModel model = transfer_model(plan, block);
  if (!decodable(model, 1) || !decodable(model, 2))
    fail(Errc::NotDecodable, "rank condition failed for " + scheme_name(plan.id));

  const double amp = std::sqrt(power);
  Eigen::VectorXcd symbols(plan.n_symbols());
  symbols.segment(0, plan.n1) = amp * u;
  symbols.segment(plan.n1, plan.n2) = amp * v;
  GaussianRng qrng(noise_seed.value_or(block.seed), 0x71ULL /* 'q' */);
  for (int k = 0; k < plan.nq; ++k)
    symbols(plan.n1 + plan.n2 + k) = amp * qrng.cnormal();

  const auto x = realize_transmit(plan, block, symbols);
  const ChannelOutputs out = apply_channel(x, block, noise_seed);

  BlockRun run;
  run.y = out.y;
  run.z = out.z;
  for (int user = 1; user <= 2; ++user) {
    const int n_user = user == 1 ? plan.n1 : plan.n2;
    Eigen::VectorXcd decoded(n_user);
    if (n_user > 0) {
      const Eigen::VectorXcd& received = user == 1 ? out.y : out.z;
      const Eigen::MatrixXcd a = model.message_columns(user);
      const Eigen::MatrixXcd b = model.nuisance_columns(user);
      // Project out the nuisance space, then least squares on what remains.
      Eigen::MatrixXcd proj_a = a;
      Eigen::VectorXcd proj_y = received;
      if (b.cols() > 0) {
        Eigen::MatrixXcd ab(a.rows(), a.cols() + b.cols());
        ab << a, b;
        const double cutoff = kRankTol * largest_sv(ab);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        int r = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv(i) > cutoff) ++r;
        const Eigen::MatrixXcd basis = svd.matrixU().leftCols(r);
        proj_a -= basis * (basis.adjoint() * a);
        proj_y -= basis * (basis.adjoint() * received);
      }
      decoded = solve_ls(proj_a, proj_y) / amp;
    }
    (user == 1 ? run.decoded_u : run.decoded_v) = decoded;
  }
  return run;
}

}  // namespace sdof
