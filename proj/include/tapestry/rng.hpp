/* Copyright 2026 The tapestry authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef TAPESTRY_RNG_HPP_
#define TAPESTRY_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tapestry/common.hpp"

namespace tapestry {

// Deterministic random source.  All randomness in the library flows through
// this class so that a fixed seed reproduces byte-identical outputs on any
// platform.  std::mt19937_64 has a fully specified bit stream; the uniform
// and normal transforms below are pinned here rather than delegated to
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // One fair bit, used for measurement outcomes.
  int coin() { return static_cast<int>(gen_() >> 63); }

  // Standard normal via Box-Muller.  The second variate of each pair is
  // cached, so consecutive calls consume bits at half rate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  cplx normal_cplx() { return cplx(normal(), normal()); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Haar-random d x d unitary, row-major.  Draws a Ginibre matrix (iid complex
// normals) and orthonormalizes its columns by modified Gram-Schmidt.  Because
// each column is normalized by its real positive norm, the implicit R factor
// has a positive diagonal and the resulting Q is exactly Haar distributed.
inline std::vector<cplx> haar_unitary(int d, Rng& rng) {
  std::vector<cplx> a(static_cast<std::size_t>(d) * d);
  for (auto& x : a) x = rng.normal_cplx();
  auto at = [&](int r, int c) -> cplx& { return a[static_cast<std::size_t>(r) * d + c]; };
  for (int c = 0; c < d; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx dot = 0.0;
      for (int r = 0; r < d; ++r) dot += std::conj(at(r, prev)) * at(r, c);
      for (int r = 0; r < d; ++r) at(r, c) -= dot * at(r, prev);
    }
    double norm2 = 0.0;
    for (int r = 0; r < d; ++r) norm2 += std::norm(at(r, c));
    double inv = 1.0 / std::sqrt(norm2);
    for (int r = 0; r < d; ++r) at(r, c) *= inv;
  }
  return a;
}

}  // namespace tapestry

#endif  // TAPESTRY_RNG_HPP_
