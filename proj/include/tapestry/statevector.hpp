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
#ifndef TAPESTRY_STATEVECTOR_HPP_
#define TAPESTRY_STATEVECTOR_HPP_

#include <cstddef>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/gates.hpp"
#include "tapestry/rng.hpp"

namespace tapestry {

// Dense pure state over n qubits, little-endian: qubit 0 is the least
// significant bit of the amplitude index.
class PureState {
 public:
  explicit PureState(int n);  // |0...0>
  PureState(int n, std::vector<cplx> amplitudes);

  int n() const { return n_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  cplx amplitude(std::size_t basis) const { return amps_[basis]; }

  void apply1(int q, const cplx* m);
  void apply2(int q0, int q1, const cplx* m);
  // Applies a unitary gate op with already-resolved qubit indices in
  // `qubits` (one per target).  Checks unitarity of custom matrices.
  void apply_gate(const GateOp& op, const std::vector<int>& qubits);

  // Z- or X-basis measurement of one qubit.  Returns +1/-1, collapses and
  // renormalizes.  The random branch consumes one uniform variate from rng.
  int measure_z(int q, Rng& rng);
  int measure_x(int q, Rng& rng);
  // Forced-outcome variants for branch-by-branch testing; they return the
  // probability of the requested outcome and throw if it is (numerically)
  // zero.  `outcome` is +1 or -1.
  double measure_z_forced(int q, int outcome);
  double measure_x_forced(int q, int outcome);

  double norm_squared() const;
  void renormalize();
  cplx inner_product(const PureState& other) const;

  // Fidelity |<this|other>| with the global phase discarded.
  double fidelity(const PureState& other) const;

  // Reorders qubits: new_position[q] is the index bit that old qubit q
  // occupies afterwards.  Must be a permutation of 0..n-1.
  void permute_qubits(const std::vector<int>& new_position);

 private:
  int n_;
  std::vector<cplx> amps_;
};

}  // namespace tapestry

#endif  // TAPESTRY_STATEVECTOR_HPP_
