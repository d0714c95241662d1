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
#ifndef TAPESTRY_PROGRAM_HPP_
#define TAPESTRY_PROGRAM_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/gates.hpp"

namespace tapestry {

enum class QubitInit { kZero, kPlus };

struct StepDef {
  std::vector<GateOp> gates;
};

// A protocol program: K steps of a gate schedule over the emitter, the
// photon returning from the delay line, and the p photons created in the
// step.  Step k's fresh photons take tape indices (k-1)*p+1 .. k*p; the
// photon in fresh slot `queue_slot` enters the delay line and returns at
// step k+N, so Returning at step k resolves to tape (k-N-1)*p + queue_slot.
struct ProtocolProgram {
  int version = 1;
  int N = 1;
  int K = 0;
  int p = 1;  // physical_per_step
  QubitInit emitter_init = QubitInit::kPlus;
  std::vector<QubitInit> fresh_init;  // one per slot; empty means all |0>
  int queue_slot = 1;
  std::optional<std::vector<GateOp>> template_gates;
  std::optional<std::vector<StepDef>> steps;

  const std::vector<GateOp>& step_gates(int k) const;  // k is 1-based
  QubitInit fresh_init_of(int slot) const;             // slot is 1-based
  int tape_qubits() const { return p * K; }
  int total_qubits() const { return p * K + 1; }

  // Tape index of the photon returning at step k (can be <= 0 while the
  // queue is filling; gates on it are skipped).
  int returning_tape(int k) const { return (k - N - 1) * p + queue_slot; }
  int fresh_tape(int k, int slot) const { return (k - 1) * p + slot; }

  // Structural checks: field ranges, exactly one of template/steps, gate
  // arity and target validity, unitarity of custom matrices, and step
  // locality (gates touch only the emitter, the returning photon, and the
  // step's own fresh photons).  Throws ValidationError.
  void validate() const;

  std::string to_json_string(int indent = 2) const;
  static ProtocolProgram from_json_string(const std::string& text);
  static ProtocolProgram load(const std::string& path);
  void save(const std::string& path) const;
};

// The cluster protocol: per step, a phase gate between the emitter and the
// returning photon (skipped while the queue fills), creation of the fresh
// photon, then an emitter Hadamard; emitter starts in |+>.  Its output is
// the graph state of cluster_geometry(N, K).
ProtocolProgram build_cluster_program(int N, int K);

// Variant with the emitter Hadamard leading each step and the emitter
// starting in |0>.  The two variants interleave into the same gate sequence
// up to one emitter Hadamard at the very end, so their outputs differ by
// H on the emitter; the step tensors differ by moving that rotation across
// the step boundary.
ProtocolProgram build_cluster_program_h_first(int N, int K);

// Harness for user-supplied 4-photon step candidates.  Validates that the
// gate list stays inside the photonic gate set: two-qubit gates must involve
// the emitter (CX additionally requires the emitter as control, since the
// photons only scatter; a photon-controlled flip must be expressed as
// H_Q CZ H_Q), and single-qubit gates act on the emitter only.  Fresh slots
// 1 and 4 start in |+>, slots 2 and 3 in |0>, slot 1 feeds the delay line.
ProtocolProgram build_toric_program(int N, int cells,
                                    const std::vector<GateOp>& gate_list);

// The checked-in 4-photon candidate whose extracted step tensor reproduces
// the reference plaquette tensor exactly (up to the isometry normalization)
// with identity leg unitaries.
std::vector<GateOp> toric_candidate_gates();

// Graph on vertices {1..K} + emitter (vertex 0).  Edges are the symmetric
// difference of the chain {(k,k+1)}, the emitter link (K, 0), and the chords
// {(k, k+N)}; the symmetric difference matters for N=1, where every chord
// coincides with a chain edge and the pair cancels (two phase gates on the
// same pair multiply to identity).
struct LatticeGeometry {
  int N = 1;
  int K = 0;
  bool has_emitter = true;
  std::vector<std::pair<int, int>> edges;  // normalized (low, high)

  static LatticeGeometry cluster(int N, int K);
  LatticeGeometry without_emitter() const;

  std::vector<int> neighbors(int v) const;
  // Lattice coordinates of tape vertex k: row ceil(k/N), column ((k-1) mod N)+1.
  std::pair<int, int> coordinate(int k) const;
  std::size_t edge_count() const { return edges.size(); }
};

}  // namespace tapestry

#endif  // TAPESTRY_PROGRAM_HPP_
