#include "sdof/channel.hpp"

#include <cmath>
#include <numbers>

#include "sdof/error.hpp"

namespace sdof {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kTinyEntry = 1e-14;

}  // namespace

GaussianRng::GaussianRng(std::uint64_t seed, std::uint64_t stream)
    : gen_(splitmix64(seed ^ splitmix64(stream))) {}

double GaussianRng::uniform() {
  // 53-bit mantissa, bumped away from zero for the log below.
  const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;
}

double GaussianRng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex GaussianRng::cnormal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));  // |x|^2 ~ Exp(1), E|x|^2 = 1
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

ChannelBlock sample_block(int n_slots, std::uint64_t seed) {
  if (n_slots < 1) fail(Errc::InvalidParameter, "n_slots must be >= 1");
  GaussianRng rng(seed, 0x6368616e6e656cULL);  // "channel" stream
  ChannelBlock block;
  block.n_slots = n_slots;
  block.seed = seed;
  block.h1.resize(n_slots);
  block.h2.resize(n_slots);
  for (int t = 0; t < n_slots; ++t) {
    for (;;) {
      Eigen::RowVector2cd a, b;
      a << rng.cnormal(), rng.cnormal();
      b << rng.cnormal(), rng.cnormal();
      const bool tiny = std::abs(a(0)) < kTinyEntry || std::abs(a(1)) < kTinyEntry ||
                        std::abs(b(0)) < kTinyEntry || std::abs(b(1)) < kTinyEntry;
      const double det = std::abs(a(0) * b(1) - a(1) * b(0));
      if (tiny || det < kTinyEntry) continue;  // measure-zero guard, resample
      block.h1[t] = a;
      block.h2[t] = b;
      break;
    }
  }
  return block;
}

Eigen::Vector2cd orthogonal_beam(const Eigen::RowVector2cd& h) {
  const double norm = h.norm();
  if (norm == 0.0) fail(Errc::ZeroChannel, "cannot beamform against a zero row");
  Eigen::Vector2cd v;
  v << -h(1), h(0);
  return v / norm;
}

ChannelOutputs apply_channel(const std::vector<Eigen::Vector2cd>& x,
                             const ChannelBlock& block,
                             std::optional<std::uint64_t> noise_seed) {
  if (static_cast<int>(x.size()) != block.n_slots)
    fail(Errc::LengthMismatch, "signal length " + std::to_string(x.size()) +
                                   " vs block length " + std::to_string(block.n_slots));
  ChannelOutputs out;
  out.y.resize(block.n_slots);
  out.z.resize(block.n_slots);
  std::optional<GaussianRng> rng;
  if (noise_seed) rng.emplace(*noise_seed, 0x6e6f697365ULL);  // "noise" stream
  for (int t = 0; t < block.n_slots; ++t) {
    out.y(t) = block.h1[t] * x[t];
    out.z(t) = block.h2[t] * x[t];
    if (rng) {
      out.y(t) += rng->cnormal();
      out.z(t) += rng->cnormal();
    }
  }
  return out;
}

}  // namespace sdof
