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
#ifndef TAPESTRY_DENSITY_HPP_
#define TAPESTRY_DENSITY_HPP_

#include <cstddef>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/gates.hpp"
#include "tapestry/statevector.hpp"

namespace tapestry {

// Dense density matrix over n qubits, stored as a flat vector of 4^n entries
// with flat index row * 2^n + col.  Qubit q's column bit is index bit q and
// its row bit is index bit n + q, so every pure-state kernel applies directly
// to either side.
class MixedState {
 public:
  explicit MixedState(int n);  // |0...0><0...0|
  static MixedState from_pure(const PureState& psi);

  int n() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const std::vector<cplx>& data() const { return rho_; }
  std::vector<cplx>& data() { return rho_; }
  cplx entry(std::size_t row, std::size_t col) const {
    return rho_[(row << n_) | col];
  }

  void apply1(int q, const cplx* m);
  void apply2(int q0, int q1, const cplx* m);
  void apply_gate(const GateOp& op, const std::vector<int>& qubits);

  // Single-qubit photon-loss channel with Kraus pair
  // K0 = diag(1, sqrt(p_survive)), K1 = sqrt(1 - p_survive) |0><1|.
  void apply_amplitude_damping(int q, double p_survive);

  double trace_real() const;
  double hermiticity_deviation() const;

  // <psi| rho |psi>, clamped to [0, 1].
  double overlap(const PureState& psi) const;
  // sqrt(<psi| rho |psi>).
  double fidelity_to_pure(const PureState& psi) const;

 private:
  int n_;
  std::vector<cplx> rho_;
};

// Result of a lossy cluster-protocol run (see run_lossy_cluster).
struct LossyRunResult {
  double fidelity = 0.0;      // sqrt(<ideal| rho |ideal>)
  double p_emit = 1.0;        // per-photon emission survival probability
  double p_scat = 1.0;        // per-scattering survival probability
  MixedState rho;
};

// Runs the cluster protocol (queue length N, K steps) on the density engine,
// inserting one emission-loss damping on each photon right after the gate
// that creates it and one scattering-loss damping right after the gate that
// returns it through the emitter (absent for the last N photons).  Survival
// probabilities derive from the cooperativities: p_emit = eta_L/(1 + eta_L)
// and p_scat = ((eta_R - 1)/(eta_R + 1))^2; pass infinity to disable a
// channel.  Returns the fidelity against the ideal pure run.
LossyRunResult run_lossy_cluster(int N, int K, double eta_L, double eta_R);

}  // namespace tapestry

#endif  // TAPESTRY_DENSITY_HPP_
