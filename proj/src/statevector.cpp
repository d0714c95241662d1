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
#include "tapestry/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "tapestry/kernels.hpp"

namespace tapestry {

PureState::PureState(int n) : n_(n), amps_(std::size_t{1} << n, cplx(0.0)) {
  if (n < 0 || n > 30) throw ValidationError("unsupported qubit count");
  amps_[0] = 1.0;
}

PureState::PureState(int n, std::vector<cplx> amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n)) {
    throw ValidationError("amplitude count does not match qubit count");
  }
}

void PureState::apply1(int q, const cplx* m) {
  if (q < 0 || q >= n_) throw ValidationError("qubit index out of range");
  kernels::apply_matrix1(amps_.data(), amps_.size(), q, m);
}

void PureState::apply2(int q0, int q1, const cplx* m) {
  if (q0 < 0 || q0 >= n_ || q1 < 0 || q1 >= n_ || q0 == q1) {
    throw ValidationError("bad qubit pair");
  }
  kernels::apply_matrix2(amps_.data(), amps_.size(), q0, q1, m);
}

void PureState::apply_gate(const GateOp& op, const std::vector<int>& qubits) {
  const int arity = gate_arity(op.kind);
  if (static_cast<int>(qubits.size()) != arity) {
    throw ValidationError("gate target count mismatch");
  }
  const std::vector<cplx> m = gate_matrix(op);
  if (op.kind == GateKind::Unitary1 || op.kind == GateKind::Unitary2) {
    const int dim = arity == 1 ? 2 : 4;
    if (static_cast<int>(m.size()) != dim * dim) {
      throw ValidationError("custom gate matrix has wrong size");
    }
    if (unitarity_deviation(m, dim) > 1e-12) {
      throw ValidationError("custom gate matrix is not unitary (tolerance 1e-12)");
    }
  }
  if (arity == 1) {
    apply1(qubits[0], m.data());
  } else {
    apply2(qubits[0], qubits[1], m.data());
  }
}

namespace {
// Probability that qubit q reads 1.
double prob_one(const std::vector<cplx>& amps, int q) {
  const std::size_t mask = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) p += std::norm(amps[i]);
  }
  return p;
}

// Projects onto qubit q = bit, renormalizing by 1/sqrt(prob).
void collapse(std::vector<cplx>& amps, int q, int bit, double prob) {
  const std::size_t mask = std::size_t{1} << q;
  const double inv = 1.0 / std::sqrt(prob);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool one = (i & mask) != 0;
    if (one == (bit == 1)) {
      amps[i] *= inv;
    } else {
      amps[i] = 0.0;
    }
  }
}
}  // namespace

int PureState::measure_z(int q, Rng& rng) {
  const double p1 = prob_one(amps_, q);
  const int bit = rng.uniform() < p1 ? 1 : 0;
  collapse(amps_, q, bit, bit ? p1 : 1.0 - p1);
  return bit ? -1 : +1;
}

double PureState::measure_z_forced(int q, int outcome) {
  const double p1 = prob_one(amps_, q);
  const int bit = outcome == -1 ? 1 : 0;
  const double p = bit ? p1 : 1.0 - p1;
  if (p < 1e-12) throw ValidationError("forced measurement outcome has zero probability");
  collapse(amps_, q, bit, p);
  return p;
}

int PureState::measure_x(int q, Rng& rng) {
  const cplx h[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  apply1(q, h);
  const int outcome = measure_z(q, rng);
  apply1(q, h);
  return outcome;
}

double PureState::measure_x_forced(int q, int outcome) {
  const cplx h[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  apply1(q, h);
  const double p = measure_z_forced(q, outcome);
  apply1(q, h);
  return p;
}

double PureState::norm_squared() const {
  return kernels::norm_squared(amps_.data(), amps_.size());
}

void PureState::renormalize() {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw ValidationError("cannot renormalize a zero state");
  kernels::scale(amps_.data(), amps_.size(), cplx(1.0 / std::sqrt(n2), 0.0));
}

cplx PureState::inner_product(const PureState& other) const {
  if (other.n_ != n_) throw ValidationError("qubit count mismatch");
  return kernels::inner_product(amps_.data(), other.amps_.data(), amps_.size());
}

double PureState::fidelity(const PureState& other) const {
  return std::abs(inner_product(other));
}

void PureState::permute_qubits(const std::vector<int>& new_position) {
  if (static_cast<int>(new_position.size()) != n_) {
    throw ValidationError("permutation size mismatch");
  }
  std::vector<bool> seen(n_, false);
  for (int p : new_position) {
    if (p < 0 || p >= n_ || seen[p]) throw ValidationError("not a permutation");
    seen[p] = true;
  }
  std::vector<cplx> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t j = 0;
    for (int q = 0; q < n_; ++q) {
      j |= ((i >> q) & 1) << new_position[q];
    }
    out[j] = amps_[i];
  }
  amps_ = std::move(out);
}

}  // namespace tapestry
