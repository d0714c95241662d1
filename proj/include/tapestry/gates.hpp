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
#ifndef TAPESTRY_GATES_HPP_
#define TAPESTRY_GATES_HPP_

#include <string>
#include <vector>

#include "tapestry/common.hpp"

namespace tapestry {

enum class GateKind { H, X, Z, S, CZ, CX, MeasureX, Unitary1, Unitary2 };

// Symbolic qubit reference inside a protocol step.  Tape indices are 1-based.
// Returning resolves to the queue-slot qubit created N steps earlier; Fresh
// resolves to one of the qubits created in the current step (slot 1..p).
struct QubitRef {
  enum class Kind { Emitter, Tape, Returning, Fresh };
  Kind kind = Kind::Emitter;
  int index = 0;  // tape index for Tape, slot for Fresh; unused otherwise

  static QubitRef emitter() { return {Kind::Emitter, 0}; }
  static QubitRef tape(int i) { return {Kind::Tape, i}; }
  static QubitRef returning() { return {Kind::Returning, 0}; }
  static QubitRef fresh(int slot = 1) { return {Kind::Fresh, slot}; }

  bool operator==(const QubitRef& o) const { return kind == o.kind && index == o.index; }
};

struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<QubitRef> targets;
  // Row-major matrix for Unitary1 (4 entries) / Unitary2 (16 entries).
  std::vector<cplx> matrix;

  static GateOp h(QubitRef q) { return {GateKind::H, {q}, {}}; }
  static GateOp x(QubitRef q) { return {GateKind::X, {q}, {}}; }
  static GateOp z(QubitRef q) { return {GateKind::Z, {q}, {}}; }
  static GateOp s(QubitRef q) { return {GateKind::S, {q}, {}}; }
  static GateOp cz(QubitRef a, QubitRef b) { return {GateKind::CZ, {a, b}, {}}; }
  static GateOp cx(QubitRef control, QubitRef target) {
    return {GateKind::CX, {control, target}, {}};
  }
  static GateOp measure_x(QubitRef q) { return {GateKind::MeasureX, {q}, {}}; }
  static GateOp unitary1(QubitRef q, std::vector<cplx> m) {
    return {GateKind::Unitary1, {q}, std::move(m)};
  }
  static GateOp unitary2(QubitRef a, QubitRef b, std::vector<cplx> m) {
    return {GateKind::Unitary2, {a, b}, std::move(m)};
  }
};

// Number of qubits the gate kind addresses (1 or 2).
int gate_arity(GateKind kind);

// True for the tableau-simulable kinds (H, X, Z, S, CZ, CX).
bool gate_is_clifford_unitary(GateKind kind);

// Dense matrix of a unitary gate op; 4 entries for 1-qubit kinds, 16 for
// 2-qubit kinds.  For two-qubit matrices the basis index is
// bit(targets[0]) + 2*bit(targets[1]).  MeasureX has no matrix and throws.
std::vector<cplx> gate_matrix(const GateOp& op);

// Max-norm deviation of M^dag M from the identity for a dim x dim matrix.
double unitarity_deviation(const std::vector<cplx>& m, int dim);

const std::string& gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

}  // namespace tapestry

#endif  // TAPESTRY_GATES_HPP_
