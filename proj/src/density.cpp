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
#include "tapestry/density.hpp"

#include <cmath>
#include <limits>

#include "tapestry/kernels.hpp"

namespace tapestry {

MixedState::MixedState(int n) : n_(n), rho_(std::size_t{1} << (2 * n), cplx(0.0)) {
  if (n < 1 || n > 14) throw ValidationError("unsupported density-matrix qubit count");
  rho_[0] = 1.0;
}

MixedState MixedState::from_pure(const PureState& psi) {
  MixedState out(psi.n());
  const std::size_t d = out.dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      out.rho_[(r << psi.n()) | c] = psi.amplitude(r) * std::conj(psi.amplitude(c));
    }
  }
  return out;
}

namespace {
std::vector<cplx> conj_matrix(const cplx* m, int entries) {
  std::vector<cplx> out(entries);
  for (int i = 0; i < entries; ++i) out[i] = std::conj(m[i]);
  return out;
}
}  // namespace

void MixedState::apply1(int q, const cplx* m) {
  if (q < 0 || q >= n_) throw ValidationError("qubit index out of range");
  const std::vector<cplx> mc = conj_matrix(m, 4);
  kernels::apply_matrix1(rho_.data(), rho_.size(), n_ + q, m);
  kernels::apply_matrix1(rho_.data(), rho_.size(), q, mc.data());
}

void MixedState::apply2(int q0, int q1, const cplx* m) {
  if (q0 < 0 || q0 >= n_ || q1 < 0 || q1 >= n_ || q0 == q1) {
    throw ValidationError("bad qubit pair");
  }
  const std::vector<cplx> mc = conj_matrix(m, 16);
  kernels::apply_matrix2(rho_.data(), rho_.size(), n_ + q0, n_ + q1, m);
  kernels::apply_matrix2(rho_.data(), rho_.size(), q0, q1, mc.data());
}

void MixedState::apply_gate(const GateOp& op, const std::vector<int>& qubits) {
  const int arity = gate_arity(op.kind);
  if (static_cast<int>(qubits.size()) != arity) {
    throw ValidationError("gate target count mismatch");
  }
  const std::vector<cplx> m = gate_matrix(op);
  if (op.kind == GateKind::Unitary1 || op.kind == GateKind::Unitary2) {
    const int dim = arity == 1 ? 2 : 4;
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

void MixedState::apply_amplitude_damping(int q, double p_survive) {
  if (q < 0 || q >= n_) throw ValidationError("qubit index out of range");
  if (!(p_survive >= 0.0 && p_survive <= 1.0)) {
    throw ValidationError("survival probability outside [0, 1]");
  }
  kernels::apply_damping_pair(rho_.data(), rho_.size(), q, n_ + q, p_survive);
}

double MixedState::trace_real() const {
  const std::size_t d = dim();
  double tr = 0.0;
  for (std::size_t r = 0; r < d; ++r) tr += rho_[(r << n_) | r].real();
  return tr;
}

double MixedState::hermiticity_deviation() const {
  const std::size_t d = dim();
  double worst = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      const double dev = std::abs(rho_[(r << n_) | c] - std::conj(rho_[(c << n_) | r]));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

double MixedState::overlap(const PureState& psi) const {
  if (psi.n() != n_) throw ValidationError("qubit count mismatch");
  const std::size_t d = dim();
  // <psi|rho|psi> accumulated row by row: sum_r conj(psi_r) * (rho psi)_r.
  // inner_product conjugates its first argument, so feeding it the
  // conjugated state gives conj((rho psi)_r) per row.
  std::vector<cplx> bar(d);
  for (std::size_t c = 0; c < d; ++c) bar[c] = std::conj(psi.amplitude(c));
  cplx acc = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    const cplx row = kernels::inner_product(rho_.data() + (r << n_), bar.data(), d);
    acc += std::conj(psi.amplitude(r)) * std::conj(row);
  }
  double v = acc.real();
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

double MixedState::fidelity_to_pure(const PureState& psi) const {
  return std::sqrt(overlap(psi));
}

LossyRunResult run_lossy_cluster(int N, int K, double eta_L, double eta_R) {
  if (N < 1 || K < 1) throw ValidationError("require N >= 1 and K >= 1");
  if (!(eta_L > 0.0)) throw ValidationError("eta_L must be positive");
  if (!(eta_R > 1.0)) {
    throw ValidationError("eta_R must exceed 1 (transmission model invalid otherwise)");
  }
  const int n = K + 1;
  const int cap = env_cap("TAPESTRY_MAX_MIXED_QUBITS", 12);
  if (n > cap) {
    throw CapExceededError("density run needs " + std::to_string(n) +
                           " qubits, cap is " + std::to_string(cap));
  }
  const double p_emit = std::isinf(eta_L) ? 1.0 : eta_L / (1.0 + eta_L);
  const double p_scat =
      std::isinf(eta_R) ? 1.0 : ((eta_R - 1.0) / (eta_R + 1.0)) * ((eta_R - 1.0) / (eta_R + 1.0));

  // Cluster schedule, mirroring build_cluster_program: per step k the emitter
  // phases the returning photon k-N (skipped while the queue fills), creates
  // photon k, and is rotated.  Tape photon t lives on qubit t-1; the emitter
  // is the top qubit.
  const int emitter = K;
  const cplx h[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  const cplx cz[16] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
  const cplx cx[16] = {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0};

  MixedState rho(n);
  PureState ideal(n);
  rho.apply1(emitter, h);
  ideal.apply1(emitter, h);
  for (int k = 1; k <= K; ++k) {
    if (k > N) {
      rho.apply2(emitter, k - N - 1, cz);
      ideal.apply2(emitter, k - N - 1, cz);
      if (p_scat < 1.0) rho.apply_amplitude_damping(k - N - 1, p_scat);
    }
    rho.apply2(emitter, k - 1, cx);
    ideal.apply2(emitter, k - 1, cx);
    if (p_emit < 1.0) rho.apply_amplitude_damping(k - 1, p_emit);
    rho.apply1(emitter, h);
    ideal.apply1(emitter, h);
  }
  LossyRunResult out{rho.fidelity_to_pure(ideal), p_emit, p_scat, std::move(rho)};
  return out;
}

}  // namespace tapestry
