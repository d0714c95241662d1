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
#include "tapestry/verify.hpp"

namespace tapestry {
namespace {

// Vertices to check: tape vertices always, the emitter only while the
// geometry still carries it.
std::vector<int> vertex_list(const LatticeGeometry& geometry) {
  std::vector<int> vs;
  if (geometry.has_emitter) vs.push_back(0);
  for (int k = 1; k <= geometry.K; ++k) vs.push_back(k);
  return vs;
}

int qubit_of_vertex(int vertex, int n_qubits) {
  return vertex == 0 ? n_qubits - 1 : vertex - 1;
}

}  // namespace

PauliString vertex_stabilizer(const LatticeGeometry& geometry, int vertex,
                              int n_qubits) {
  const int needed = geometry.K + (geometry.has_emitter ? 1 : 0);
  if (n_qubits < needed) {
    throw ValidationError("state has fewer qubits than the geometry needs");
  }
  PauliString op(n_qubits);
  op.set_x(qubit_of_vertex(vertex, n_qubits), true);
  for (int w : geometry.neighbors(vertex)) {
    op.set_z(qubit_of_vertex(w, n_qubits), true);
  }
  return op;
}

VerificationReport verify_graph_state(const Tableau& tableau,
                                      const LatticeGeometry& geometry) {
  return verify_graph_state(tableau.stabilizers(), tableau.n(), geometry);
}

VerificationReport verify_graph_state(const std::vector<PauliString>& gens,
                                      int n_qubits,
                                      const LatticeGeometry& geometry) {
  VerificationReport report;
  report.pass = true;
  for (int v : vertex_list(geometry)) {
    const PauliString op = vertex_stabilizer(geometry, v, n_qubits);
    VertexCheck check;
    check.vertex = v;
    check.op = op.to_string();
    const Membership m = group_membership(gens, op);
    check.pass = m == Membership::kYesPlus;
    check.expectation =
        m == Membership::kYesPlus ? 1.0 : (m == Membership::kYesMinus ? -1.0 : 0.0);
    report.pass = report.pass && check.pass;
    report.checks.push_back(check);
  }
  return report;
}

VerificationReport verify_graph_state(const PureState& state,
                                      const LatticeGeometry& geometry,
                                      double tol) {
  VerificationReport report;
  report.pass = true;
  for (int v : vertex_list(geometry)) {
    const PauliString op = vertex_stabilizer(geometry, v, state.n());
    VertexCheck check;
    check.vertex = v;
    check.op = op.to_string();
    check.expectation = op.expectation(state).real();
    check.pass = std::abs(check.expectation - 1.0) <= tol;
    report.pass = report.pass && check.pass;
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace tapestry
