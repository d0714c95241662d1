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
#include "tapestry/runner.hpp"

#include <string>

namespace tapestry {
namespace {

void throw_step(int k, const std::string& msg) {
  throw ValidationError("step " + std::to_string(k) + ": " + msg);
}

// Applies one gate to whichever engine is active.  `qs` holds the resolved
// qubit indices in target order.
struct EngineState {
  RunResult* result;
  Rng* rng;

  void apply(const GateOp& op, const std::vector<int>& qs, int step) {
    if (op.kind == GateKind::MeasureX) {
      if (result->mixed.has_value()) {
        throw_step(step, "measurement gates are not supported on the density "
                         "engine");
      }
      MeasurementEvent ev;
      ev.step = step;
      ev.qubit = qs[0];
      if (result->tableau.has_value()) {
        const MeasureResult r = result->tableau->measure_x(qs[0], *rng);
        ev.outcome = r.outcome;
        ev.deterministic = r.deterministic;
      } else {
        ev.outcome = result->pure->measure_x(qs[0], *rng);
      }
      result->measurements.push_back(ev);
      return;
    }
    if (result->tableau.has_value()) {
      if (!gate_is_clifford_unitary(op.kind)) {
        throw_step(step, "gate " + gate_kind_name(op.kind) +
                             " is not available on the stabilizer engine");
      }
      result->tableau->apply_gate(op, qs);
    } else if (result->pure.has_value()) {
      result->pure->apply_gate(op, qs);
    } else {
      result->mixed->apply_gate(op, qs);
    }
  }

  void apply_h(int q, int step) { apply(GateOp::h(QubitRef::emitter()), {q}, step); }
};

}  // namespace

EngineKind engine_from_name(const std::string& name) {
  if (name == "stabilizer") return EngineKind::kStabilizer;
  if (name == "statevector") return EngineKind::kStatevector;
  if (name == "density") return EngineKind::kDensity;
  throw ValidationError("unknown engine \"" + name +
                        "\" (expected stabilizer, statevector, or density)");
}

std::string engine_name(EngineKind engine) {
  switch (engine) {
    case EngineKind::kStabilizer:
      return "stabilizer";
    case EngineKind::kStatevector:
      return "statevector";
    case EngineKind::kDensity:
      return "density";
  }
  return "?";
}

std::optional<int> resolve_target(const ProtocolProgram& program, int k,
                                  const QubitRef& ref) {
  switch (ref.kind) {
    case QubitRef::Kind::Emitter:
      return program.tape_qubits();
    case QubitRef::Kind::Fresh:
      return program.fresh_tape(k, ref.index) - 1;
    case QubitRef::Kind::Returning: {
      const int tape = program.returning_tape(k);
      if (tape < 1) return std::nullopt;
      return tape - 1;
    }
    case QubitRef::Kind::Tape: {
      if (ref.index < 1 || ref.index > program.tape_qubits()) {
        throw ValidationError("tape index " + std::to_string(ref.index) +
                              " out of range");
      }
      return ref.index - 1;
    }
  }
  throw ValidationError("unhandled qubit reference kind");
}

RunResult run(const ProtocolProgram& program, EngineKind engine,
              std::uint64_t seed) {
  program.validate();
  const int n = program.total_qubits();

  RunResult result;
  result.engine = engine;
  result.n_qubits = n;
  result.emitter_qubit = program.tape_qubits();

  switch (engine) {
    case EngineKind::kStabilizer:
      result.tableau.emplace(n);
      break;
    case EngineKind::kStatevector: {
      const int cap = env_cap("TAPESTRY_MAX_PURE_QUBITS", 22);
      if (n > cap) {
        throw CapExceededError("statevector run needs " + std::to_string(n) +
                               " qubits, cap is " + std::to_string(cap) +
                               " (TAPESTRY_MAX_PURE_QUBITS)");
      }
      result.pure.emplace(n);
      break;
    }
    case EngineKind::kDensity: {
      const int cap = env_cap("TAPESTRY_MAX_MIXED_QUBITS", 12);
      if (n > cap) {
        throw CapExceededError("density run needs " + std::to_string(n) +
                               " qubits, cap is " + std::to_string(cap) +
                               " (TAPESTRY_MAX_MIXED_QUBITS)");
      }
      result.mixed.emplace(n);
      break;
    }
  }

  Rng rng(seed);
  EngineState state{&result, &rng};

  if (program.emitter_init == QubitInit::kPlus) {
    state.apply_h(result.emitter_qubit, 0);
  }

  std::vector<int> qs;
  for (int k = 1; k <= program.K; ++k) {
    for (int slot = 1; slot <= program.p; ++slot) {
      if (program.fresh_init_of(slot) == QubitInit::kPlus) {
        state.apply_h(program.fresh_tape(k, slot) - 1, k);
      }
    }
    for (const GateOp& op : program.step_gates(k)) {
      qs.clear();
      bool skip = false;
      for (const QubitRef& t : op.targets) {
        const std::optional<int> q = resolve_target(program, k, t);
        if (!q.has_value()) {
          skip = true;
          break;
        }
        qs.push_back(*q);
      }
      if (skip) continue;
      state.apply(op, qs, k);
    }
  }
  return result;
}

DisentangleRecord disentangle_emitter(RunResult& result,
                                      const ProtocolProgram& program,
                                      Rng& rng, std::optional<int> forced) {
  if (result.mixed.has_value()) {
    throw ValidationError(
        "disentangling is not supported on the density engine");
  }
  const int emitter = result.emitter_qubit;
  DisentangleRecord rec;

  if (program.K >= 1) {
    // The last step ends with H on the emitter; undoing it leaves the graph
    // state proper, whose emitter vertex an X measurement then removes.
    if (result.tableau.has_value()) {
      result.tableau->apply_h(emitter);
    } else {
      result.pure->apply_gate(GateOp::h(QubitRef::emitter()), {emitter});
    }
  }

  if (result.tableau.has_value()) {
    const MeasureResult r = result.tableau->measure_x(emitter, rng, forced);
    rec.outcome = r.outcome;
    rec.deterministic = r.deterministic;
  } else if (forced.has_value()) {
    result.pure->measure_x_forced(emitter, *forced);
    rec.outcome = *forced;
  } else {
    rec.outcome = result.pure->measure_x(emitter, rng);
  }
  result.measurements.push_back(
      MeasurementEvent{0, emitter, rec.outcome, rec.deterministic});

  if (rec.outcome == -1 && program.K >= 1) {
    const LatticeGeometry geo =
        LatticeGeometry::cluster(program.N, program.K);
    for (int v : geo.neighbors(0)) {
      rec.corrected.push_back(v);
      if (result.tableau.has_value()) {
        result.tableau->apply_z(v - 1);
      } else {
        result.pure->apply_gate(GateOp::z(QubitRef::emitter()), {v - 1});
      }
    }
  }
  return rec;
}

}  // namespace tapestry
