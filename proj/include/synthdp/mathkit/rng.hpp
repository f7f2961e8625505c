// Copyright 2026 The synthdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded, splittable random streams.
//
// A stream is identified by (seed, stream_id). Both words are mixed through
// SplitMix64 to seed a xoshiro256** engine, so identical identifiers give
// bit-identical sequences on every platform, and distinct stream ids give
// decorrelated sequences. All variate generation (uniform, normal, gamma) is
// implemented here rather than via <random> distributions, whose algorithms
// are implementation-defined.

#ifndef SYNTHDP_MATHKIT_RNG_HPP_
#define SYNTHDP_MATHKIT_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "synthdp/mathkit/errors.hpp"

namespace synthdp {

namespace internal {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace internal

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t mix = seed ^ internal::rotl(stream_id * 0xd1342543de82ef95ULL, 17);
    // Fold the stream id in twice so that (s, i) and (s ^ x, i') collide only
    // with negligible probability.
    std::uint64_t sm = mix;
    internal::splitmix64(sm);
    sm ^= stream_id;
    for (auto& word : state_) word = internal::splitmix64(sm);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Child stream derived from this stream's identity (not its position).
  RngStream split(std::uint64_t child) const {
    std::uint64_t sm = stream_id_ ^ (child * 0x9e3779b97f4a7c15ULL);
    const std::uint64_t derived = internal::splitmix64(sm) ^ child;
    return RngStream(seed_ ^ internal::rotl(derived, 23), derived);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    const std::uint64_t result = internal::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = internal::rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Standard normal by the Marsaglia polar method.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

  // Gamma(shape, 1) by Marsaglia-Tsang, with the usual boost for shape < 1.
  double gamma(double shape) {
    require(shape > 0.0, "gamma: shape must be positive");
    if (shape < 1.0) {
      const double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Central chi-squared with `dof` degrees of freedom.
  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace synthdp

#endif  // SYNTHDP_MATHKIT_RNG_HPP_
