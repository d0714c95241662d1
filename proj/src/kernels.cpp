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
#include "tapestry/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace tapestry::kernels {

void apply_matrix1(cplx* amps, std::size_t size, int q, const cplx* m) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t lo_mask = mask - 1;
  const std::int64_t pairs = static_cast<std::int64_t>(size >> 1);
  const cplx m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < pairs; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t i0 = ((u & ~lo_mask) << 1) | (u & lo_mask);
    const std::size_t i1 = i0 | mask;
    const cplx a0 = amps[i0];
    const cplx a1 = amps[i1];
    amps[i0] = m00 * a0 + m01 * a1;
    amps[i1] = m10 * a0 + m11 * a1;
  }
}

void apply_matrix2(cplx* amps, std::size_t size, int q0, int q1, const cplx* m) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const int s_lo = q0 < q1 ? q0 : q1;
  const int s_hi = q0 < q1 ? q1 : q0;
  const std::size_t lo_mask = (std::size_t{1} << s_lo) - 1;
  const std::size_t mid_mask = ((std::size_t{1} << (s_hi - 1)) - 1) & ~lo_mask;
  const std::int64_t groups = static_cast<std::int64_t>(size >> 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < groups; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    // Spread u over the index bits, leaving holes at s_lo and s_hi.
    const std::size_t base = (u & lo_mask) | ((u & mid_mask) << 1) |
                             ((u & ~(lo_mask | mid_mask)) << 2);
    cplx v[4];
    v[0] = amps[base];
    v[1] = amps[base | m0];
    v[2] = amps[base | m1];
    v[3] = amps[base | m0 | m1];
    for (int r = 0; r < 4; ++r) {
      const cplx out = m[4 * r + 0] * v[0] + m[4 * r + 1] * v[1] +
                       m[4 * r + 2] * v[2] + m[4 * r + 3] * v[3];
      const std::size_t idx = base | (static_cast<std::size_t>(r & 1) * m0) |
                              (static_cast<std::size_t>(r >> 1) * m1);
      amps[idx] = out;
    }
  }
}

void apply_damping_pair(cplx* rho, std::size_t size, int lo, int hi, double p) {
  const std::size_t m_lo = std::size_t{1} << lo;
  const std::size_t m_hi = std::size_t{1} << hi;
  const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
  const std::size_t mid_mask = ((std::size_t{1} << (hi - 1)) - 1) & ~lo_mask;
  const double sp = std::sqrt(p);
  const std::int64_t groups = static_cast<std::int64_t>(size >> 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < groups; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t base = (u & lo_mask) | ((u & mid_mask) << 1) |
                             ((u & ~(lo_mask | mid_mask)) << 2);
    const std::size_t i11 = base | m_lo | m_hi;
    rho[base] += (1.0 - p) * rho[i11];
    rho[base | m_lo] *= sp;
    rho[base | m_hi] *= sp;
    rho[i11] *= p;
  }
}

namespace {
constexpr std::size_t kChunk = 4096;
}

cplx inner_product(const cplx* a, const cplx* b, std::size_t size) {
  const std::size_t nchunks = (size + kChunk - 1) / kChunk;
  std::vector<cplx> partial(nchunks, cplx(0.0));
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = begin + kChunk < size ? begin + kChunk : size;
    cplx acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += std::conj(a[i]) * b[i];
    partial[static_cast<std::size_t>(c)] = acc;
  }
  cplx total = 0.0;
  for (const cplx& v : partial) total += v;
  return total;
}

double norm_squared(const cplx* a, std::size_t size) {
  const std::size_t nchunks = (size + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = begin + kChunk < size ? begin + kChunk : size;
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += std::norm(a[i]);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void scale(cplx* a, std::size_t size, cplx factor) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(size); ++i) {
    a[static_cast<std::size_t>(i)] *= factor;
  }
}

}  // namespace tapestry::kernels

namespace tapestry::reference {

// The reference kernels scan every amplitude and branch on the target bits,
// instead of enumerating amplitude groups.  Slower, but structurally
// independent of the production kernels.

void apply_matrix1(cplx* amps, std::size_t size, int q, const cplx* m) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < size; ++i) {
    if (i & mask) continue;
    const cplx a0 = amps[i];
    const cplx a1 = amps[i | mask];
    amps[i] = m[0] * a0 + m[1] * a1;
    amps[i | mask] = m[2] * a0 + m[3] * a1;
  }
}

void apply_matrix2(cplx* amps, std::size_t size, int q0, int q1, const cplx* m) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  for (std::size_t i = 0; i < size; ++i) {
    if (i & (m0 | m1)) continue;
    cplx v[4];
    for (int c = 0; c < 4; ++c) {
      v[c] = amps[i | ((c & 1) ? m0 : 0) | ((c >> 1) ? m1 : 0)];
    }
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * v[c];
      amps[i | ((r & 1) ? m0 : 0) | ((r >> 1) ? m1 : 0)] = acc;
    }
  }
}

void apply_damping_pair(cplx* rho, std::size_t size, int lo, int hi, double p) {
  const std::size_t m_lo = std::size_t{1} << lo;
  const std::size_t m_hi = std::size_t{1} << hi;
  const double sp = std::sqrt(p);
  for (std::size_t i = 0; i < size; ++i) {
    const bool b_lo = (i & m_lo) != 0;
    const bool b_hi = (i & m_hi) != 0;
    if (!b_lo && !b_hi) {
      rho[i] += (1.0 - p) * rho[i | m_lo | m_hi];
    } else if (b_lo && b_hi) {
      rho[i] *= p;
    } else {
      rho[i] *= sp;
    }
  }
}

cplx inner_product(const cplx* a, const cplx* b, std::size_t size) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < size; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm_squared(const cplx* a, std::size_t size) {
  double acc = 0.0;
  for (std::size_t i = 0; i < size; ++i) acc += std::norm(a[i]);
  return acc;
}

}  // namespace tapestry::reference
