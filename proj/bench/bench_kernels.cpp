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
// Times the parallel state kernels against the serial reference
// implementation on the same buffers.  Usage: tapestry_bench [n_qubits]
// [repeats]; defaults exercise a 20-qubit state.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/kernels.hpp"
#include "tapestry/rng.hpp"

namespace {

using tapestry::cplx;

std::vector<cplx> random_state(int n, tapestry::Rng& rng) {
  std::vector<cplx> amps(std::size_t{1} << n);
  for (cplx& a : amps) a = rng.normal_cplx();
  double norm2 = 0.0;
  for (const cplx& a : amps) norm2 += std::norm(a);
  const double scale = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= scale;
  return amps;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void print_row(const char* label, double parallel, double serial,
               int repeats) {
  std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", label,
              1e3 * parallel / repeats, 1e3 * serial / repeats,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 20;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (n < 2 || n > 28 || repeats < 1) {
    std::fprintf(stderr, "usage: %s [n_qubits in 2..28] [repeats >= 1]\n",
                 argv[0]);
    return 2;
  }

  tapestry::Rng rng(12345);
  const std::vector<cplx> base = random_state(n, rng);
  const std::vector<cplx> other = random_state(n, rng);
  const double inv = 1.0 / std::sqrt(2.0);
  const cplx h[4] = {inv, inv, inv, -inv};
  cplx cz[16] = {};
  cz[0] = cz[5] = cz[10] = 1.0;
  cz[15] = -1.0;

  std::printf("state kernels, n = %d (%zu amplitudes), %d repeats\n", n,
              base.size(), repeats);
  std::printf("%-22s %13s %13s %9s\n", "kernel", "parallel", "serial",
              "speedup");

  // Single-qubit gate swept across every target position.
  {
    std::vector<cplx> amps = base;
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 0; q < n; ++q) {
        tapestry::kernels::apply_matrix1(amps.data(), amps.size(), q, h);
      }
    }
    const double parallel = seconds_since(start);
    amps = base;
    start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 0; q < n; ++q) {
        tapestry::reference::apply_matrix1(amps.data(), amps.size(), q, h);
      }
    }
    print_row("apply_matrix1 x n", parallel, seconds_since(start), repeats);
  }

  // Two-qubit gate between qubit 0 and every higher position.
  {
    std::vector<cplx> amps = base;
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 1; q < n; ++q) {
        tapestry::kernels::apply_matrix2(amps.data(), amps.size(), 0, q, cz);
      }
    }
    const double parallel = seconds_since(start);
    amps = base;
    start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 1; q < n; ++q) {
        tapestry::reference::apply_matrix2(amps.data(), amps.size(), 0, q, cz);
      }
    }
    print_row("apply_matrix2 x n-1", parallel, seconds_since(start), repeats);
  }

  // Amplitude-damping pair update used by the lossy runs.
  {
    std::vector<cplx> amps = base;
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 0; q + 1 < n; ++q) {
        tapestry::kernels::apply_damping_pair(amps.data(), amps.size(), q,
                                              n - 1, 0.05);
      }
    }
    const double parallel = seconds_since(start);
    amps = base;
    start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      for (int q = 0; q + 1 < n; ++q) {
        tapestry::reference::apply_damping_pair(amps.data(), amps.size(), q,
                                                n - 1, 0.05);
      }
    }
    print_row("apply_damping_pair", parallel, seconds_since(start), repeats);
  }

  // Reductions.
  {
    volatile double sink = 0.0;
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      sink = sink +
             tapestry::kernels::inner_product(base.data(), other.data(),
                                              base.size())
                 .real() +
             tapestry::kernels::norm_squared(base.data(), base.size());
    }
    const double parallel = seconds_since(start);
    start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) {
      sink = sink +
             tapestry::reference::inner_product(base.data(), other.data(),
                                                base.size())
                 .real() +
             tapestry::reference::norm_squared(base.data(), base.size());
    }
    print_row("inner_product + norm", parallel, seconds_since(start), repeats);
    (void)sink;
  }

  return 0;
}
