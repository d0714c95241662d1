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
#ifndef TAPESTRY_RUNNER_HPP_
#define TAPESTRY_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tapestry/density.hpp"
#include "tapestry/program.hpp"
#include "tapestry/rng.hpp"
#include "tapestry/statevector.hpp"
#include "tapestry/tableau.hpp"

namespace tapestry {

enum class EngineKind { kStabilizer, kStatevector, kDensity };

EngineKind engine_from_name(const std::string& name);
std::string engine_name(EngineKind engine);

struct MeasurementEvent {
  int step = 0;    // 0 for events outside the step loop (disentangling)
  int qubit = 0;   // qubit index in the run layout
  int outcome = 0; // +1 or -1
  bool deterministic = false;
};

// Qubit layout of a run: tape photon t (1-based) lives on qubit t-1 and the
// emitter on qubit p*K, so states have p*K + 1 qubits.
struct RunResult {
  EngineKind engine = EngineKind::kStatevector;
  int n_qubits = 0;
  int emitter_qubit = 0;
  std::optional<Tableau> tableau;
  std::optional<PureState> pure;
  std::optional<MixedState> mixed;
  std::vector<MeasurementEvent> measurements;
};

// Resolved qubit index of `ref` at step k, or no value when the reference
// points at a photon that has not entered the delay line yet (k <= N for
// Returning); gates with such a target are skipped.
std::optional<int> resolve_target(const ProtocolProgram& program, int k,
                                  const QubitRef& ref);

// Executes the program: emitter init, then per step the fresh-photon inits
// followed by the step's gates.  Gates whose Returning target has no photon
// yet are skipped.  The seed feeds measurement sampling only; runs without
// measurement gates are deterministic.
RunResult run(const ProtocolProgram& program, EngineKind engine,
              std::uint64_t seed = 0);

struct DisentangleRecord {
  int outcome = 0;
  bool deterministic = false;
  std::vector<int> corrected;  // tape vertices that received a Z correction
};

// Detaches the emitter from a cluster-program output in place: undoes the
// trailing emitter Hadamard, measures the emitter in the X basis, and on a
// -1 outcome applies Z to the emitter's graph neighbors.  Afterwards the
// tape qubits carry the graph state of cluster_geometry(N, K) without the
// emitter vertex, and the emitter factors out.  `forced` pins the
// measurement branch for reproducibility tests.
DisentangleRecord disentangle_emitter(RunResult& result,
                                      const ProtocolProgram& program,
                                      Rng& rng,
                                      std::optional<int> forced = std::nullopt);

}  // namespace tapestry

#endif  // TAPESTRY_RUNNER_HPP_
