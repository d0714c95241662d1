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
#include "tapestry/program.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace tapestry {
namespace {

using json = nlohmann::ordered_json;

constexpr int kMaxPhysicalPerStep = 8;

std::string init_name(QubitInit init) {
  return init == QubitInit::kPlus ? "plus" : "zero";
}

QubitInit init_from_name(const std::string& name) {
  if (name == "plus") return QubitInit::kPlus;
  if (name == "zero") return QubitInit::kZero;
  throw ValidationError("unknown qubit init \"" + name +
                        "\" (expected \"zero\" or \"plus\")");
}

json target_to_json(const QubitRef& ref) {
  switch (ref.kind) {
    case QubitRef::Kind::Emitter:
      return "Q";
    case QubitRef::Kind::Returning:
      return "returning";
    case QubitRef::Kind::Fresh:
      if (ref.index == 1) return "fresh";
      return "fresh" + std::to_string(ref.index);
    case QubitRef::Kind::Tape:
      return ref.index;
  }
  throw ValidationError("unhandled qubit reference kind");
}

QubitRef target_from_json(const json& j) {
  if (j.is_number_integer()) {
    return QubitRef::tape(j.get<int>());
  }
  if (!j.is_string()) {
    throw ValidationError("gate target must be a string or a tape index");
  }
  const std::string s = j.get<std::string>();
  if (s == "Q") return QubitRef::emitter();
  if (s == "returning") return QubitRef::returning();
  if (s == "fresh") return QubitRef::fresh(1);
  if (s.rfind("fresh", 0) == 0) {
    const std::string tail = s.substr(5);
    if (!tail.empty() &&
        std::all_of(tail.begin(), tail.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      return QubitRef::fresh(std::stoi(tail));
    }
  }
  throw ValidationError("unknown gate target \"" + s + "\"");
}

json gate_to_json(const GateOp& op) {
  json j;
  j["kind"] = gate_kind_name(op.kind);
  j["targets"] = json::array();
  for (const QubitRef& t : op.targets) j["targets"].push_back(target_to_json(t));
  if (!op.matrix.empty()) {
    json m = json::array();
    for (const cplx& v : op.matrix) {
      m.push_back(v.real());
      m.push_back(v.imag());
    }
    j["matrix"] = m;
  }
  return j;
}

GateOp gate_from_json(const json& j) {
  GateOp op;
  if (!j.contains("kind")) throw ValidationError("gate entry missing \"kind\"");
  op.kind = gate_kind_from_name(j.at("kind").get<std::string>());
  if (!j.contains("targets") || !j.at("targets").is_array()) {
    throw ValidationError("gate entry missing \"targets\" array");
  }
  for (const json& t : j.at("targets")) op.targets.push_back(target_from_json(t));
  if (j.contains("matrix")) {
    const json& m = j.at("matrix");
    if (!m.is_array() || m.size() % 2 != 0) {
      throw ValidationError("gate matrix must be a flat [re, im, ...] array");
    }
    for (std::size_t i = 0; i < m.size(); i += 2) {
      op.matrix.emplace_back(m[i].get<double>(), m[i + 1].get<double>());
    }
  }
  return op;
}

json gates_to_json(const std::vector<GateOp>& gates) {
  json arr = json::array();
  for (const GateOp& g : gates) arr.push_back(gate_to_json(g));
  return arr;
}

std::vector<GateOp> gates_from_json(const json& arr) {
  if (!arr.is_array()) throw ValidationError("\"gates\" must be an array");
  std::vector<GateOp> gates;
  for (const json& g : arr) gates.push_back(gate_from_json(g));
  return gates;
}

void validate_gate(const GateOp& op, int p, bool in_template) {
  const int arity = gate_arity(op.kind);
  if (static_cast<int>(op.targets.size()) != arity) {
    throw ValidationError("gate " + gate_kind_name(op.kind) + " expects " +
                          std::to_string(arity) + " target(s), got " +
                          std::to_string(op.targets.size()));
  }
  if (arity == 2 && op.targets[0] == op.targets[1]) {
    throw ValidationError("gate " + gate_kind_name(op.kind) +
                          " targets the same qubit twice");
  }
  for (const QubitRef& t : op.targets) {
    if (t.kind == QubitRef::Kind::Fresh && (t.index < 1 || t.index > p)) {
      throw ValidationError("fresh slot " + std::to_string(t.index) +
                            " out of range 1.." + std::to_string(p));
    }
    if (t.kind == QubitRef::Kind::Tape && in_template) {
      throw ValidationError(
          "template gates cannot address absolute tape indices; use "
          "\"fresh\"/\"returning\"");
    }
  }
  if (op.kind == GateKind::Unitary1 || op.kind == GateKind::Unitary2) {
    const int dim = arity == 1 ? 2 : 4;
    if (static_cast<int>(op.matrix.size()) != dim * dim) {
      throw ValidationError("gate " + gate_kind_name(op.kind) + " needs a " +
                            std::to_string(dim) + "x" + std::to_string(dim) +
                            " matrix");
    }
    const double dev = unitarity_deviation(op.matrix, dim);
    if (dev > 1e-12) {
      std::ostringstream os;
      os << "gate " << gate_kind_name(op.kind)
         << " matrix is not unitary (deviation " << dev << ")";
      throw ValidationError(os.str());
    }
  } else if (!op.matrix.empty()) {
    throw ValidationError("gate " + gate_kind_name(op.kind) +
                          " does not take a matrix");
  }
}

}  // namespace

const std::vector<GateOp>& ProtocolProgram::step_gates(int k) const {
  if (k < 1 || k > K) {
    throw ValidationError("step index " + std::to_string(k) +
                          " out of range 1.." + std::to_string(K));
  }
  if (steps.has_value()) return (*steps)[static_cast<std::size_t>(k - 1)].gates;
  if (template_gates.has_value()) return *template_gates;
  throw ValidationError("program defines neither a template nor explicit steps");
}

QubitInit ProtocolProgram::fresh_init_of(int slot) const {
  if (slot < 1 || slot > p) {
    throw ValidationError("fresh slot " + std::to_string(slot) +
                          " out of range 1.." + std::to_string(p));
  }
  if (fresh_init.empty()) return QubitInit::kZero;
  return fresh_init[static_cast<std::size_t>(slot - 1)];
}

void ProtocolProgram::validate() const {
  if (version != 1) {
    throw ValidationError("unsupported program version " +
                          std::to_string(version));
  }
  if (N < 1) throw ValidationError("delay length N must be >= 1");
  if (K < 0) throw ValidationError("step count K must be >= 0");
  if (p < 1 || p > kMaxPhysicalPerStep) {
    throw ValidationError("physical_per_step must be in 1.." +
                          std::to_string(kMaxPhysicalPerStep));
  }
  if (!fresh_init.empty() && static_cast<int>(fresh_init.size()) != p) {
    throw ValidationError("fresh_init must list one init per physical slot");
  }
  if (queue_slot < 1 || queue_slot > p) {
    throw ValidationError("queue_slot must be in 1.." + std::to_string(p));
  }
  if (template_gates.has_value() == steps.has_value()) {
    throw ValidationError(
        "program must define exactly one of \"template\" and \"steps\"");
  }
  if (steps.has_value() && static_cast<int>(steps->size()) != K) {
    throw ValidationError("\"steps\" must contain exactly K entries");
  }
  if (template_gates.has_value()) {
    for (const GateOp& g : *template_gates) validate_gate(g, p, true);
  } else {
    for (int k = 1; k <= K; ++k) {
      for (const GateOp& g : (*steps)[static_cast<std::size_t>(k - 1)].gates) {
        try {
          validate_gate(g, p, false);
        } catch (const ValidationError& e) {
          throw ValidationError("step " + std::to_string(k) + ": " + e.what());
        }
        // Absolute tape indices are allowed only when they alias a qubit
        // that is local to this step anyway.
        for (const QubitRef& t : g.targets) {
          if (t.kind != QubitRef::Kind::Tape) continue;
          const bool is_returning = t.index == returning_tape(k);
          const bool is_fresh =
              t.index >= fresh_tape(k, 1) && t.index <= fresh_tape(k, p);
          if (!is_returning && !is_fresh) {
            throw ValidationError(
                "step " + std::to_string(k) + ": tape index " +
                std::to_string(t.index) +
                " is neither the returning photon nor a fresh photon of this "
                "step");
          }
        }
      }
    }
  }
}

std::string ProtocolProgram::to_json_string(int indent) const {
  json j;
  j["version"] = version;
  j["N"] = N;
  j["K"] = K;
  j["physical_per_step"] = p;
  j["emitter_init"] = init_name(emitter_init);
  if (!fresh_init.empty()) {
    json arr = json::array();
    for (QubitInit init : fresh_init) arr.push_back(init_name(init));
    j["fresh_init"] = arr;
  }
  if (queue_slot != 1) j["queue_slot"] = queue_slot;
  if (template_gates.has_value()) {
    j["template"] = json{{"gates", gates_to_json(*template_gates)}};
  }
  if (steps.has_value()) {
    json arr = json::array();
    for (const StepDef& s : *steps) {
      arr.push_back(json{{"gates", gates_to_json(s.gates)}});
    }
    j["steps"] = arr;
  }
  return j.dump(indent) + "\n";
}

ProtocolProgram ProtocolProgram::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("program is not valid JSON: ") + e.what());
  }
  ProtocolProgram prog;
  if (j.contains("version")) prog.version = j.at("version").get<int>();
  if (!j.contains("N") || !j.contains("K")) {
    throw ValidationError("program must define N and K");
  }
  prog.N = j.at("N").get<int>();
  prog.K = j.at("K").get<int>();
  if (j.contains("physical_per_step")) {
    prog.p = j.at("physical_per_step").get<int>();
  }
  if (j.contains("emitter_init")) {
    prog.emitter_init = init_from_name(j.at("emitter_init").get<std::string>());
  }
  if (j.contains("fresh_init")) {
    for (const json& e : j.at("fresh_init")) {
      prog.fresh_init.push_back(init_from_name(e.get<std::string>()));
    }
  }
  if (j.contains("queue_slot")) prog.queue_slot = j.at("queue_slot").get<int>();
  if (j.contains("template")) {
    prog.template_gates = gates_from_json(j.at("template").at("gates"));
  }
  if (j.contains("steps")) {
    std::vector<StepDef> steps;
    for (const json& s : j.at("steps")) {
      steps.push_back(StepDef{gates_from_json(s.at("gates"))});
    }
    prog.steps = std::move(steps);
  }
  prog.validate();
  return prog;
}

ProtocolProgram ProtocolProgram::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open program file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void ProtocolProgram::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write program file " + path);
  out << to_json_string();
}

ProtocolProgram build_cluster_program(int N, int K) {
  if (N < 1) throw ValidationError("delay length N must be >= 1");
  if (K < 0) throw ValidationError("step count K must be >= 0");
  ProtocolProgram prog;
  prog.N = N;
  prog.K = K;
  prog.p = 1;
  prog.emitter_init = QubitInit::kPlus;
  prog.template_gates = std::vector<GateOp>{
      GateOp::cz(QubitRef::emitter(), QubitRef::returning()),
      GateOp::cx(QubitRef::emitter(), QubitRef::fresh()),
      GateOp::h(QubitRef::emitter()),
  };
  return prog;
}

ProtocolProgram build_cluster_program_h_first(int N, int K) {
  ProtocolProgram prog = build_cluster_program(N, K);
  prog.emitter_init = QubitInit::kZero;
  prog.template_gates = std::vector<GateOp>{
      GateOp::h(QubitRef::emitter()),
      GateOp::cz(QubitRef::emitter(), QubitRef::returning()),
      GateOp::cx(QubitRef::emitter(), QubitRef::fresh()),
  };
  return prog;
}

ProtocolProgram build_toric_program(int N, int cells,
                                    const std::vector<GateOp>& gate_list) {
  if (N < 1) throw ValidationError("delay length N must be >= 1");
  if (cells < 0) throw ValidationError("cell count must be >= 0");
  for (std::size_t i = 0; i < gate_list.size(); ++i) {
    const GateOp& g = gate_list[i];
    const std::string where =
        "gate " + std::to_string(i + 1) + " (" + gate_kind_name(g.kind) + ")";
    auto is_emitter = [](const QubitRef& t) {
      return t.kind == QubitRef::Kind::Emitter;
    };
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::Z:
      case GateKind::S:
      case GateKind::Unitary1:
        if (g.targets.size() != 1 || !is_emitter(g.targets[0])) {
          throw ValidationError(where +
                                ": single-qubit gates may act on the emitter "
                                "only");
        }
        break;
      case GateKind::CZ:
        if (g.targets.size() != 2 ||
            (!is_emitter(g.targets[0]) && !is_emitter(g.targets[1]))) {
          throw ValidationError(where + ": CZ must involve the emitter");
        }
        break;
      case GateKind::CX:
        if (g.targets.size() != 2 || !is_emitter(g.targets[0])) {
          throw ValidationError(
              where +
              ": CX must be controlled by the emitter; photons cannot "
              "control a flip directly (use H on the emitter around a CZ)");
        }
        break;
      default:
        throw ValidationError(where + ": not in the photonic gate set");
    }
  }
  ProtocolProgram prog;
  prog.N = N;
  prog.K = cells;
  prog.p = 4;
  prog.emitter_init = QubitInit::kPlus;
  prog.fresh_init = {QubitInit::kPlus, QubitInit::kZero, QubitInit::kZero,
                     QubitInit::kPlus};
  prog.queue_slot = 1;
  prog.template_gates = gate_list;
  prog.validate();
  return prog;
}

std::vector<GateOp> toric_candidate_gates() {
  const QubitRef Q = QubitRef::emitter();
  const QubitRef R = QubitRef::returning();
  const QubitRef k1 = QubitRef::fresh(1);
  const QubitRef k2 = QubitRef::fresh(2);
  const QubitRef k3 = QubitRef::fresh(3);
  const QubitRef k4 = QubitRef::fresh(4);
  std::vector<GateOp> gates;
  // A flip of the emitter controlled by photon x is realized as
  // H(Q) CZ(Q, x) H(Q); flips of photons controlled by the emitter are
  // native CX gates.
  auto photon_controls_emitter = [&gates, Q](const QubitRef& x) {
    gates.push_back(GateOp::h(Q));
    gates.push_back(GateOp::cz(Q, x));
    gates.push_back(GateOp::h(Q));
  };
  auto emitter_controls_photon = [&gates, Q](const QubitRef& x) {
    gates.push_back(GateOp::cx(Q, x));
  };
  photon_controls_emitter(R);   // Q <- Q xor R
  emitter_controls_photon(k3);  // k3 <- k3 xor Q
  photon_controls_emitter(k3);  // Q <- Q xor k3
  photon_controls_emitter(R);   // Q <- Q xor R
  emitter_controls_photon(k4);  // k4 <- k4 xor Q
  emitter_controls_photon(R);   // R <- R xor Q
  photon_controls_emitter(k3);  // Q <- Q xor k3
  photon_controls_emitter(k1);  // Q <- Q xor k1
  emitter_controls_photon(k2);  // k2 <- k2 xor Q
  photon_controls_emitter(k2);  // Q <- Q xor k2
  photon_controls_emitter(k4);  // Q <- Q xor k4
  photon_controls_emitter(k3);  // Q <- Q xor k3
  photon_controls_emitter(k2);  // Q <- Q xor k2
  emitter_controls_photon(R);   // R <- R xor Q
  photon_controls_emitter(k1);  // Q <- Q xor k1
  return gates;
}

LatticeGeometry LatticeGeometry::cluster(int N, int K) {
  if (N < 1) throw ValidationError("delay length N must be >= 1");
  if (K < 0) throw ValidationError("step count K must be >= 0");
  LatticeGeometry geo;
  geo.N = N;
  geo.K = K;
  geo.has_emitter = true;
  std::map<std::pair<int, int>, int> parity;
  auto toggle = [&parity](int a, int b) {
    parity[{std::min(a, b), std::max(a, b)}] ^= 1;
  };
  for (int k = 1; k < K; ++k) toggle(k, k + 1);
  if (K >= 1) toggle(K, 0);
  for (int k = 1; k + N <= K; ++k) toggle(k, k + N);
  for (const auto& [edge, odd] : parity) {
    if (odd) geo.edges.push_back(edge);
  }
  return geo;
}

LatticeGeometry LatticeGeometry::without_emitter() const {
  LatticeGeometry geo = *this;
  geo.has_emitter = false;
  geo.edges.erase(std::remove_if(geo.edges.begin(), geo.edges.end(),
                                 [](const std::pair<int, int>& e) {
                                   return e.first == 0 || e.second == 0;
                                 }),
                  geo.edges.end());
  return geo;
}

std::vector<int> LatticeGeometry::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<int, int> LatticeGeometry::coordinate(int k) const {
  if (k < 1 || k > K) {
    throw ValidationError("tape vertex " + std::to_string(k) +
                          " out of range 1.." + std::to_string(K));
  }
  return {(k + N - 1) / N, (k - 1) % N + 1};
}

}  // namespace tapestry
