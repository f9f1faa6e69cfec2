#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/schemes.hpp"

namespace sdof {

// Linear map from the stacked symbol vector (u-block | v-block | q-block) to
// each receiver's stacked noiseless block outputs, for one realization.
// Slot coefficients are scaled so that with i.i.d. CN(0, P) symbols each
// non-silent slot meets E||X(t)||^2 = P exactly; slot_gain holds the applied
// divisors (1 for silent slots).
struct TransferModel {
  int n1 = 0;
  int n2 = 0;
  int nq = 0;
  Eigen::MatrixXcd m1;  // n_b x (n1+n2+nq)
  Eigen::MatrixXcd m2;
  std::vector<double> slot_gain;

  int cols() const { return n1 + n2 + nq; }
  Eigen::MatrixXcd message_columns(int user) const;   // own message block
  Eigen::MatrixXcd nuisance_columns(int user) const;  // other message + noise
  const Eigen::MatrixXcd& side(int user) const { return user == 1 ? m1 : m2; }
};

// Per-slot 2x(n1+n2+nq) coefficient matrices, power-normalized.
std::vector<Eigen::Matrix2Xcd> slot_coefficients(const SchemePlan& plan,
                                                 const ChannelBlock& block);

// The transmit sequence for one symbol draw; feeding it through apply_channel
// in noiseless mode reproduces the transfer model applied to the symbols.
std::vector<Eigen::Vector2cd> realize_transmit(const SchemePlan& plan,
                                               const ChannelBlock& block,
                                               const Eigen::VectorXcd& symbols);

TransferModel transfer_model(const SchemePlan& plan, const ChannelBlock& block);

// True iff rank([A | B]) = n_user + rank(B) with A the user's own message
// columns and B everything else; ranks use singular values with a 1e-8
// relative threshold.
bool decodable(const TransferModel& model, int user);

struct BlockRun {
  Eigen::VectorXcd y;
  Eigen::VectorXcd z;
  Eigen::VectorXcd decoded_u;
  Eigen::VectorXcd decoded_v;
};

// Transmits caller-scale message symbols at power P (messages scaled by
// sqrt(P), artificial noise CN(0, P)) and decodes each receiver's symbols by
// least squares after projecting out the nuisance columns. Throws
// NotDecodable when the rank condition fails for either user.
BlockRun run_block(const SchemePlan& plan, const ChannelBlock& block,
                   const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, double power,
                   std::optional<std::uint64_t> noise_seed);

}  // namespace sdof
