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
#ifndef TAPESTRY_TENSOR_HPP_
#define TAPESTRY_TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/program.hpp"
#include "tapestry/rng.hpp"

namespace tapestry {

// One protocol step viewed as a map from (incoming bond c, emitter d) to
// (physical outputs i1..ip, outgoing bond a, emitter b).  i1 is the photon
// leaving the delay line, i2..ip the fresh photons that exit immediately
// (slot order, skipping the queue slot), a the fresh photon entering the
// delay line, b the emitter.  Storage is row-major over (i1..ip, a, b, c, d)
// with i1 slowest, so the flat index is
// ((i_flat * D_v + a) * d_Q + b) * D_v + c) * d_Q + d with
// i_flat = i1*2^(p-1) + ... + ip.
struct StepTensor {
  int p = 1;
  int D_v = 2;
  int d_Q = 2;
  std::vector<cplx> data;

  static StepTensor zeros(int p);
  std::size_t size() const { return data.size(); }
  int physical_dim() const { return 1 << p; }

  std::size_t flat(int i_flat, int a, int b, int c, int d) const {
    return ((((static_cast<std::size_t>(i_flat) * 2 + a) * 2 + b) * 2 + c) *
            2) + d;
  }
  cplx& at(int i_flat, int a, int b, int c, int d) {
    return data[flat(i_flat, a, b, c, d)];
  }
  const cplx& at(int i_flat, int a, int b, int c, int d) const {
    return data[flat(i_flat, a, b, c, d)];
  }

  double frobenius_norm() const;
};

// Simulates step k of the program on the step's own qubits: the returning
// photon enters as bond state c, the emitter as d, fresh photons in their
// declared inits.  Steps inside the queue-fill window (k <= N) have no
// returning photon; their tensor carries the identity on the bond leg.
StepTensor extract_step_tensor(const ProtocolProgram& program, int k);

// Gram matrix over the input pairs (c, d): G[(c,d)][(c',d')] =
// sum_{i,a,b} T(i,a,b,c,d) conj(T(i,a,b,c',d')).  The tensor is an isometry
// when G is the identity.
struct IsometryReport {
  double max_deviation = 0.0;
  bool pass = false;
  std::vector<cplx> gram;  // 4x4, row-major, row index c*2+d
};

IsometryReport check_isometry(const StepTensor& tensor, double tol);

// The reference plaquette tensor on four physical legs:
// T = norm * [i1 = a xor b][i2 = d xor a][i3 = c xor d][i4 = b xor c].
// norm = 1/2 makes it an isometry; norm = 1/4 gives the scaled variant
// whose Gram is exactly I/4.
StepTensor toric_tensor(double norm = 0.5);

// Best Frobenius distance between `candidate` and `reference` after
// dressing every leg of `candidate` with its own 2x2 unitary, found by
// alternating polar updates from `restarts` random starts (the first start
// is the identity).  Both tensors must share p.
struct LuCompareResult {
  double distance = 0.0;        // after optimizing the leg unitaries
  double direct_distance = 0.0; // plain |candidate - reference|_F
  int iterations = 0;
  bool converged = false;
};

LuCompareResult compare_up_to_local_unitaries(const StepTensor& candidate,
                                              const StepTensor& reference,
                                              int restarts = 16,
                                              std::uint64_t seed = 0);

}  // namespace tapestry

#endif  // TAPESTRY_TENSOR_HPP_
