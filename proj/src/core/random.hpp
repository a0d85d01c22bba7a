// Copyright 2026 The rsf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace rsf {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator. Draw `i` of stream `s` under seed `k` is a pure
/// function of (k, s, i); there is no shared state between instances, so
/// sample `i` is reproducible regardless of how work is split across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  /// Independent child stream, e.g. one per sample index.
  CounterRng fork(std::uint64_t index) const noexcept {
    return CounterRng(key_, index, Tag{});
  }

  std::uint64_t next_u64() noexcept {
    return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  double normal() noexcept {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd on_sphere(int dim, double radius) noexcept {
    Eigen::VectorXd v(dim);
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v[i] = normal();
      norm = v.norm();
    } while (norm < 1e-300);
    return v * (radius / norm);
  }

  Eigen::VectorXd in_ball(int dim, double radius) noexcept {
    const double scale = std::pow(uniform(), 1.0 / dim);
    return on_sphere(dim, radius * scale);
  }

 private:
  struct Tag {};
  CounterRng(std::uint64_t parent_key, std::uint64_t index, Tag) noexcept
      : key_(splitmix64(parent_key ^ splitmix64(index ^ 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rsf
