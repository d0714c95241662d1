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
#ifndef TAPESTRY_VERIFY_HPP_
#define TAPESTRY_VERIFY_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "tapestry/pauli.hpp"
#include "tapestry/program.hpp"
#include "tapestry/statevector.hpp"
#include "tapestry/tableau.hpp"

namespace tapestry {

// One row per graph vertex v: the correlation operator X_v prod_{w~v} Z_w.
// On the stabilizer path `sign` is the group-membership result and
// `expectation` mirrors it; on the statevector path `expectation` is the
// measured <psi| S_v |psi> and pass means |expectation - 1| <= tol.
struct VertexCheck {
  int vertex = 0;  // 0 is the emitter, 1..K are tape photons
  bool pass = false;
  double expectation = 0.0;
  std::string op;  // the checked Pauli string
};

struct VerificationReport {
  bool pass = false;
  std::vector<VertexCheck> checks;
};

// Builds vertex v's correlation operator on n qubits in the run layout
// (tape vertex t on qubit t-1, emitter on qubit n-1).
PauliString vertex_stabilizer(const LatticeGeometry& geometry, int vertex,
                              int n_qubits);

VerificationReport verify_graph_state(const Tableau& tableau,
                                      const LatticeGeometry& geometry);

// Same check against a bare generator list, e.g. one parsed back from a
// tableau file.
VerificationReport verify_graph_state(const std::vector<PauliString>& gens,
                                      int n_qubits,
                                      const LatticeGeometry& geometry);

VerificationReport verify_graph_state(const PureState& state,
                                      const LatticeGeometry& geometry,
                                      double tol);

}  // namespace tapestry

#endif  // TAPESTRY_VERIFY_HPP_
