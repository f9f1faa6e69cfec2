#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace sdof {

using Complex = std::complex<double>;

// Deterministic complex-Gaussian source. mt19937_64 is fully specified by the
// standard; the uniform-to-double and Box-Muller steps are done by hand so
// streams are reproducible across toolchains.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed, std::uint64_t stream = 0);
  double normal();            // real N(0, 1)
  Complex cnormal();          // circularly symmetric, E|x|^2 = 1
  double uniform();           // (0, 1)

 private:
  std::mt19937_64 gen_;
};

// One i.i.d. Rayleigh-fading block: per-slot 1x2 rows for both receivers.
// Entries are standard circularly symmetric complex Gaussian; draws with an
// entry below 1e-14 in magnitude or nearly collinear rows are rejected and
// resampled to protect rank checks downstream.
struct ChannelBlock {
  int n_slots = 0;
  std::uint64_t seed = 0;
  std::vector<Eigen::RowVector2cd> h1;
  std::vector<Eigen::RowVector2cd> h2;

  const Eigen::RowVector2cd& row(int user, int slot) const {
    return user == 1 ? h1[slot] : h2[slot];
  }
};

ChannelBlock sample_block(int n_slots, std::uint64_t seed);

// Unit-norm beam v with h * v = 0 (matrix product, so h X is nulled exactly).
// Throws ZeroChannel on a zero row.
Eigen::Vector2cd orthogonal_beam(const Eigen::RowVector2cd& h);

struct ChannelOutputs {
  Eigen::VectorXcd y;  // receiver 1
  Eigen::VectorXcd z;  // receiver 2
};

// y(t) = h1(t) x(t) + n1(t), z(t) = h2(t) x(t) + n2(t) with unit-variance
// circularly symmetric noise, or exactly zero noise when noise_seed is empty.
ChannelOutputs apply_channel(const std::vector<Eigen::Vector2cd>& x,
                             const ChannelBlock& block,
                             std::optional<std::uint64_t> noise_seed);

}  // namespace sdof
