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
// Command-line front end.  Exit codes: 0 success/pass, 1 verification
// failure (including quadrature that missed its error target), 2 usage or
// validation error, 3 resource cap exceeded.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tapestry/contraction.hpp"
#include "tapestry/density.hpp"
#include "tapestry/feasibility.hpp"
#include "tapestry/io.hpp"
#include "tapestry/photonics.hpp"
#include "tapestry/program.hpp"
#include "tapestry/runner.hpp"
#include "tapestry/tensor.hpp"
#include "tapestry/verify.hpp"

namespace tapestry {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

void emit(const ordered_json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file_bytes(out_path, text);
}

ordered_json json_complex(cplx z) {
  return ordered_json{z.real(), z.imag()};
}

// Options shared by every subcommand that needs a program: either a
// built-in family instantiated from --n/--k, or a program file.
struct ProgramOpts {
  std::string builtin;
  std::string path;
  int N = 2;
  int K = 4;
};

struct LoadedProgram {
  ProtocolProgram program;
  std::string hash;
};

LoadedProgram load_program(const ProgramOpts& o) {
  if (o.builtin.empty() == o.path.empty()) {
    throw ValidationError("give exactly one of --builtin and --program");
  }
  LoadedProgram lp;
  if (!o.builtin.empty()) {
    if (o.builtin == "cluster") {
      lp.program = build_cluster_program(o.N, o.K);
    } else if (o.builtin == "cluster-h-first") {
      lp.program = build_cluster_program_h_first(o.N, o.K);
    } else if (o.builtin == "toric") {
      lp.program = build_toric_program(o.N, o.K, toric_candidate_gates());
    } else {
      throw ValidationError("unknown builtin '" + o.builtin +
                            "' (cluster, cluster-h-first, toric)");
    }
    lp.hash = hash_hex(fnv1a64(lp.program.to_json_string()));
  } else {
    const std::string bytes = read_file_bytes(o.path);
    lp.program = ProtocolProgram::from_json_string(bytes);
    lp.hash = hash_hex(fnv1a64(bytes));
  }
  return lp;
}

void add_program_options(CLI::App* cmd, ProgramOpts* o) {
  cmd->add_option("--builtin", o->builtin,
                  "built-in program family: cluster, cluster-h-first, toric");
  cmd->add_option("--program", o->path, "program JSON file");
  cmd->add_option("--n", o->N, "queue length N for built-ins");
  cmd->add_option("--k", o->K, "step count K for built-ins");
}

// Parses "a:b:count" into a linearly spaced grid; a bare number is a
// single-point grid.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double a = std::stod(parts[0]);
      const double b = std::stod(parts[1]);
      const int count = std::stoi(parts[2]);
      if (count < 1) throw ValidationError("grid count must be >= 1");
      std::vector<double> grid(count);
      for (int i = 0; i < count; ++i) {
        grid[i] = count == 1 ? a : a + (b - a) * i / (count - 1);
      }
      return grid;
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw ValidationError("bad grid '" + text + "', expected 'a:b:count'");
}

WavepacketModel::Shape shape_from_name(const std::string& name) {
  if (name == "lorentzian") return WavepacketModel::Shape::kLorentzian;
  if (name == "gaussian") return WavepacketModel::Shape::kGaussian;
  throw ValidationError("unknown shape '" + name +
                        "' (lorentzian or gaussian)");
}

// The wavepacket whose bandwidth ratio against gamma_R = 1 equals x.
WavepacketModel model_for_ratio(WavepacketModel::Shape shape, double x) {
  return shape == WavepacketModel::Shape::kLorentzian
             ? WavepacketModel::lorentzian(x)
             : WavepacketModel::gaussian(x);
}

ordered_json verification_json(const VerificationReport& report) {
  ordered_json j;
  j["pass"] = report.pass;
  ordered_json checks = ordered_json::array();
  ordered_json failing = ordered_json::array();
  for (const VertexCheck& c : report.checks) {
    checks.push_back({{"vertex", c.vertex},
                      {"op", c.op},
                      {"expectation", c.expectation},
                      {"pass", c.pass}});
    if (!c.pass) failing.push_back(c.vertex);
  }
  j["failing_vertices"] = failing;
  j["checks"] = checks;
  return j;
}

ordered_json isometry_json(const IsometryReport& report,
                           const StepTensor& tensor) {
  ordered_json j;
  j["pass"] = report.pass;
  j["max_deviation"] = report.max_deviation;
  double normalization = 0.0;
  for (const cplx& v : tensor.data) {
    normalization = std::max(normalization, std::abs(v));
  }
  j["normalization"] = normalization;
  ordered_json gram = ordered_json::array();
  for (const cplx& g : report.gram) gram.push_back(json_complex(g));
  j["gram"] = gram;
  return j;
}

ordered_json toric_report_json(const ToricReport& report) {
  ordered_json j;
  j["pass"] = report.pass;
  j["worst_deviation"] = report.worst;
  ordered_json checks = ordered_json::array();
  for (const ToricCheck& c : report.checks) {
    checks.push_back({{"label", c.label},
                      {"op", c.op},
                      {"expectation", c.expectation},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  return j;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
  ProgramOpts program;
  std::string engine = "stabilizer";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool disentangle = false;
};

int cmd_generate(const GenerateOpts& o, const std::string& command) {
  LoadedProgram lp = load_program(o.program);
  const EngineKind engine = engine_from_name(o.engine);
  RunResult result = run(lp.program, engine, o.seed);

  ordered_json summary;
  summary["engine"] = engine_name(engine);
  summary["n_qubits"] = result.n_qubits;
  if (o.disentangle) {
    // Separate stream from the run's measurement sampling, still a pure
    // function of --seed.
    Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    const DisentangleRecord rec = disentangle_emitter(result, lp.program, rng);
    summary["disentangle"] = {{"outcome", rec.outcome},
                              {"deterministic", rec.deterministic},
                              {"corrected", rec.corrected}};
  }

  const Provenance prov{command, o.seed, lp.hash};
  if (result.tableau.has_value()) {
    write_tableau_json(o.out, *result.tableau, prov);
    summary["format"] = "tableau-json";
  } else if (result.pure.has_value()) {
    if (o.format == "binary") {
      write_state_binary(o.out, *result.pure, prov);
      summary["format"] = "state-binary";
    } else if (o.format == "json") {
      write_state_json(o.out, *result.pure, prov);
      summary["format"] = "state-json";
    } else {
      throw ValidationError("unknown format '" + o.format + "'");
    }
  } else {
    write_density_binary(o.out, *result.mixed, prov);
    summary["format"] = "density-binary";
  }
  summary["out"] = o.out;
  summary["program_hash"] = lp.hash;
  std::cout << summary.dump(2) << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string state_path;
  std::string tableau_path;
  std::string tensor_path;
  int N = 2;
  int K = 4;
  bool no_emitter = false;
  bool toric = false;
  int Tx = 2;
  int Ty = 2;
  double tol = 1e-8;
  double tensor_tol = 1e-12;
  std::string out;
};

int cmd_verify(const VerifyOpts& o, const std::string&) {
  const int given = (o.state_path.empty() ? 0 : 1) +
                    (o.tableau_path.empty() ? 0 : 1) +
                    (o.tensor_path.empty() ? 0 : 1);
  if (given != 1) {
    throw ValidationError("give exactly one of --state, --tableau, --tensor");
  }

  ordered_json j;
  bool pass = false;

  if (!o.tensor_path.empty()) {
    const StepTensor tensor = read_tensor_file(o.tensor_path);
    const IsometryReport report = check_isometry(tensor, o.tensor_tol);
    j["check"] = "isometry";
    j["report"] = isometry_json(report, tensor);
    pass = report.pass;
  } else if (o.toric) {
    if (o.state_path.empty()) {
      throw ValidationError("toric verification needs --state");
    }
    const StateFile file = read_state_file(o.state_path);
    const PureState state(file.n, file.amplitudes);
    const ToricReport x_stars = verify_toric_stabilizers(
        state, o.Tx, o.Ty, ToricConvention::kXStars, o.tol);
    const ToricReport z_stars = verify_toric_stabilizers(
        state, o.Tx, o.Ty, ToricConvention::kZStars, o.tol);
    j["check"] = "toric-stabilizers";
    j["x_stars"] = toric_report_json(x_stars);
    j["z_stars"] = toric_report_json(z_stars);
    pass = x_stars.pass != z_stars.pass;  // exactly one convention fits
    j["passing_convention"] =
        x_stars.pass ? "x-stars" : (z_stars.pass ? "z-stars" : "none");
  } else {
    LatticeGeometry geometry = LatticeGeometry::cluster(o.N, o.K);
    if (o.no_emitter) geometry = geometry.without_emitter();
    VerificationReport report;
    if (!o.tableau_path.empty()) {
      const TableauFile file = read_tableau_file(o.tableau_path);
      std::vector<PauliString> gens;
      gens.reserve(file.generators.size());
      for (const std::string& g : file.generators) {
        gens.push_back(PauliString::from_string(g));
      }
      report = verify_graph_state(gens, file.n, geometry);
    } else {
      const StateFile file = read_state_file(o.state_path);
      const PureState state(file.n, file.amplitudes);
      report = verify_graph_state(state, geometry, o.tol);
    }
    j["check"] = "graph-state";
    j["report"] = verification_json(report);
    pass = report.pass;
  }

  j["pass"] = pass;
  emit(j, o.out);
  return pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// extract-tensor / check-isometry

struct ExtractOpts {
  ProgramOpts program;
  int step = 0;  // 0 means the first bulk step, min(N+1, K)
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_extract_tensor(const ExtractOpts& o, const std::string& command) {
  LoadedProgram lp = load_program(o.program);
  int step = o.step;
  if (step == 0) step = std::min(lp.program.N + 1, lp.program.K);
  const StepTensor tensor = extract_step_tensor(lp.program, step);
  write_tensor_binary(o.out, tensor,
                      Provenance{command, o.seed, lp.hash});
  ordered_json j;
  j["step"] = step;
  j["p"] = tensor.p;
  j["frobenius_norm"] = tensor.frobenius_norm();
  j["out"] = o.out;
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

struct IsometryOpts {
  std::string tensor_path;
  double tol = 1e-12;
  std::string out;
};

int cmd_check_isometry(const IsometryOpts& o, const std::string&) {
  const StepTensor tensor = read_tensor_file(o.tensor_path);
  const IsometryReport report = check_isometry(tensor, o.tol);
  ordered_json j = isometry_json(report, tensor);
  emit(j, o.out);
  return report.pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// contract

struct ContractOpts {
  ProgramOpts program;
  std::string mode = "full";
  std::string bits;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

int cmd_contract(const ContractOpts& o, const std::string& command) {
  LoadedProgram lp = load_program(o.program);
  if (o.mode == "full") {
    const PureState state = contract_protocol_network(lp.program);
    ordered_json j;
    j["mode"] = "full";
    j["n_qubits"] = state.n();
    j["norm"] = std::sqrt(state.norm_squared());
    if (!o.out.empty()) {
      const Provenance prov{command, o.seed, lp.hash};
      if (o.format == "binary") {
        write_state_binary(o.out, state, prov);
      } else {
        write_state_json(o.out, state, prov);
      }
      j["out"] = o.out;
    }
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  }
  if (o.mode != "amplitude") {
    throw ValidationError("mode must be full or amplitude");
  }
  std::vector<int> bits;
  bits.reserve(o.bits.size());
  for (char c : o.bits) {
    if (c != '0' && c != '1') {
      throw ValidationError("--bits must be a string of 0s and 1s");
    }
    bits.push_back(c - '0');
  }
  const cplx amp = contract_amplitude(lp.program, bits);
  ordered_json j;
  j["mode"] = "amplitude";
  j["bits"] = o.bits;
  j["amplitude"] = json_complex(amp);
  j["abs"] = std::abs(amp);
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// toric

struct ToricOpts {
  std::string candidate_path;
  double norm = 0.5;
  int Tx = 2;
  int Ty = 2;
  bool no_contract = false;
  double isometry_tol = 1e-12;
  double stabilizer_tol = 1e-8;
  double distance_tol = -1.0;  // negative means report-only
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_toric(const ToricOpts& o, const std::string&) {
  ordered_json j;
  bool pass = true;

  const StepTensor reference = toric_tensor(o.norm);
  const IsometryReport ref_iso = check_isometry(reference, o.isometry_tol);
  j["norm"] = o.norm;
  j["reference_isometry"] = isometry_json(ref_iso, reference);

  if (!o.candidate_path.empty()) {
    const std::string bytes = read_file_bytes(o.candidate_path);
    const ProtocolProgram candidate = ProtocolProgram::from_json_string(bytes);
    const int step = std::min(candidate.N + 1, candidate.K);
    const StepTensor tensor = extract_step_tensor(candidate, step);
    const IsometryReport iso = check_isometry(tensor, o.isometry_tol);
    const LuCompareResult cmp =
        compare_up_to_local_unitaries(tensor, toric_tensor(0.5), 16, o.seed);
    ordered_json cj;
    cj["program_hash"] = hash_hex(fnv1a64(bytes));
    cj["step"] = step;
    cj["isometry"] = isometry_json(iso, tensor);
    cj["distance_after_local_unitaries"] = cmp.distance;
    cj["direct_distance"] = cmp.direct_distance;
    cj["optimizer_converged"] = cmp.converged;
    j["candidate"] = cj;
    pass = pass && iso.pass;
    if (o.distance_tol >= 0.0) {
      pass = pass && cmp.distance <= o.distance_tol;
    }
  }

  if (!o.no_contract) {
    const PureState state = contract_torus(toric_tensor(0.5), o.Tx, o.Ty);
    const ToricReport x_stars = verify_toric_stabilizers(
        state, o.Tx, o.Ty, ToricConvention::kXStars, o.stabilizer_tol);
    const ToricReport z_stars = verify_toric_stabilizers(
        state, o.Tx, o.Ty, ToricConvention::kZStars, o.stabilizer_tol);
    j["torus"] = {{"Tx", o.Tx},
                  {"Ty", o.Ty},
                  {"n_qubits", state.n()},
                  {"x_stars", toric_report_json(x_stars)},
                  {"z_stars", toric_report_json(z_stars)},
                  {"passing_convention",
                   x_stars.pass ? "x-stars"
                                : (z_stars.pass ? "z-stars" : "none")}};
    pass = pass && (x_stars.pass != z_stars.pass);
  }

  j["pass"] = pass;
  emit(j, o.out);
  return pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// fidelity

struct GateZOpts {
  std::string shape = "lorentzian";
  double x = 1.0;
  bool no_quadrature = false;
  std::string out;
};

int cmd_gate_z(const GateZOpts& o, const std::string&) {
  const WavepacketModel::Shape shape = shape_from_name(o.shape);
  const double closed = scattered_overlap_closed(shape, o.x);
  ordered_json j;
  j["shape"] = o.shape;
  j["x"] = o.x;
  j["overlap_closed"] = closed;
  int rc = kExitPass;
  if (!o.no_quadrature) {
    const QuadratureResult q = scattered_overlap(model_for_ratio(shape, o.x), 1.0);
    j["overlap_quadrature"] = json_complex(q.value);
    j["abs_difference"] = std::abs(q.value - cplx(closed, 0.0));
    j["quadrature_error"] = q.abs_error;
    j["quadrature_evaluations"] = q.evaluations;
    if (!q.converged) {
      j["quadrature_converged"] = false;
      rc = kExitVerifyFail;
    }
  }
  j["fidelity"] = phase_gate_fidelity_from_overlap(closed);
  emit(j, o.out);
  return rc;
}

struct GateXOpts {
  std::string shape = "gaussian";
  double product = 4.0;  // gamma_L * T or B * T
  bool no_quadrature = false;
  std::string out;
};

int cmd_gate_x(const GateXOpts& o, const std::string&) {
  const WavepacketModel::Shape shape = shape_from_name(o.shape);
  if (!(o.product > 0.0)) {
    throw ValidationError("--product must be > 0");
  }
  const WavepacketModel w = shape == WavepacketModel::Shape::kLorentzian
                                ? WavepacketModel::lorentzian(1.0)
                                : WavepacketModel::gaussian(1.0);
  const double eps_closed = cnot_completion_error_closed(w, o.product);
  ordered_json j;
  j["shape"] = o.shape;
  j["product"] = o.product;
  j["eps_closed"] = eps_closed;
  int rc = kExitPass;
  if (!o.no_quadrature) {
    const QuadratureResult q = cnot_completion_error(w, o.product);
    j["eps_quadrature"] = q.value.real();
    j["abs_difference"] = std::abs(q.value.real() - eps_closed);
    j["quadrature_error"] = q.abs_error;
    j["quadrature_evaluations"] = q.evaluations;
    if (!q.converged) {
      j["quadrature_converged"] = false;
      rc = kExitVerifyFail;
    }
  }
  j["fidelity"] = cnot_fidelity(eps_closed);
  emit(j, o.out);
  return rc;
}

struct LossOpts {
  int N = 2;
  int M = 2;
  double eta = 0.0;  // shorthand setting both channels
  double eta_L = 0.0;
  double eta_R = 0.0;
  bool no_oracle = false;
  std::string out;
};

int cmd_loss(const LossOpts& o, const std::string&) {
  double eta_L = o.eta_L;
  double eta_R = o.eta_R;
  if (o.eta > 0.0) {
    if (eta_L > 0.0 || eta_R > 0.0) {
      throw ValidationError("--eta conflicts with --eta-l/--eta-r");
    }
    eta_L = eta_R = o.eta;
  }
  const double model = loss_fidelity_model(o.N, o.M, eta_L, eta_R);
  ordered_json j;
  j["N"] = o.N;
  j["M"] = o.M;
  j["photons"] = o.N * o.M;
  j["eta_L"] = eta_L;
  j["eta_R"] = eta_R;
  j["model_fidelity"] = model;
  if (!o.no_oracle) {
    const LossyRunResult oracle =
        run_lossy_cluster(o.N, o.N * o.M, eta_L, eta_R);
    j["oracle_fidelity"] = oracle.fidelity;
    j["abs_difference"] = std::abs(model - oracle.fidelity);
    j["p_emit"] = oracle.p_emit;
    j["p_scat"] = oracle.p_scat;
  }
  emit(j, o.out);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// sweeps

struct SweepGateZOpts {
  std::string grid = "0.01:1:50";
  std::string shape = "lorentzian";
  bool both_shapes = false;
  std::string out;
};

int cmd_sweep_gate_z(const SweepGateZOpts& o, const std::string& command) {
  const std::vector<double> grid = parse_grid(o.grid);
  CsvBuilder csv(Provenance{command, 0, ""});
  std::vector<WavepacketModel::Shape> shapes;
  std::vector<std::string> names;
  if (o.both_shapes) {
    shapes = {WavepacketModel::Shape::kLorentzian,
              WavepacketModel::Shape::kGaussian};
    names = {"lorentzian", "gaussian"};
  } else {
    shapes = {shape_from_name(o.shape)};
    names = {o.shape};
  }
  std::vector<std::string> header{"x"};
  for (const std::string& name : names) {
    header.push_back("overlap_" + name);
    header.push_back("fidelity_" + name);
  }
  csv.set_header(header);
  for (double x : grid) {
    std::vector<std::string> row{format_double(x)};
    for (WavepacketModel::Shape shape : shapes) {
      const double overlap = scattered_overlap_closed(shape, x);
      row.push_back(format_double(overlap));
      row.push_back(format_double(phase_gate_fidelity_from_overlap(overlap)));
    }
    csv.add_row(row);
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file_bytes(o.out, csv.str());
  }
  return kExitPass;
}

struct SweepGateXOpts {
  std::string grid = "0.5:12:24";
  std::string shape = "gaussian";
  bool both_shapes = false;
  std::string out;
};

int cmd_sweep_gate_x(const SweepGateXOpts& o, const std::string& command) {
  const std::vector<double> grid = parse_grid(o.grid);
  CsvBuilder csv(Provenance{command, 0, ""});
  std::vector<WavepacketModel> models;
  std::vector<std::string> names;
  if (o.both_shapes) {
    models = {WavepacketModel::lorentzian(1.0), WavepacketModel::gaussian(1.0)};
    names = {"lorentzian", "gaussian"};
  } else {
    const WavepacketModel::Shape shape = shape_from_name(o.shape);
    models = {shape == WavepacketModel::Shape::kLorentzian
                  ? WavepacketModel::lorentzian(1.0)
                  : WavepacketModel::gaussian(1.0)};
    names = {o.shape};
  }
  std::vector<std::string> header{"product"};
  for (const std::string& name : names) {
    header.push_back("eps_" + name);
    header.push_back("fidelity_" + name);
  }
  csv.set_header(header);
  for (double product : grid) {
    std::vector<std::string> row{format_double(product)};
    for (const WavepacketModel& w : models) {
      const double eps = cnot_completion_error_closed(w, product);
      row.push_back(format_double(eps));
      row.push_back(format_double(cnot_fidelity(eps)));
    }
    csv.add_row(row);
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file_bytes(o.out, csv.str());
  }
  return kExitPass;
}

struct SweepLossOpts {
  int N = 2;
  int m_max = 5;
  double eta = 0.0;
  double eta_L = 0.0;
  double eta_R = 0.0;
  bool with_oracle = false;
  std::string out;
};

int cmd_sweep_loss(const SweepLossOpts& o, const std::string& command) {
  double eta_L = o.eta_L;
  double eta_R = o.eta_R;
  if (o.eta > 0.0) {
    if (eta_L > 0.0 || eta_R > 0.0) {
      throw ValidationError("--eta conflicts with --eta-l/--eta-r");
    }
    eta_L = eta_R = o.eta;
  }
  if (o.m_max < 1) throw ValidationError("--m-max must be >= 1");
  CsvBuilder csv(Provenance{command, 0, ""});
  std::vector<std::string> header{"m", "photons", "model_fidelity"};
  if (o.with_oracle) {
    header.push_back("oracle_fidelity");
    header.push_back("abs_difference");
  }
  csv.set_header(header);
  for (int m = 1; m <= o.m_max; ++m) {
    const double model = loss_fidelity_model(o.N, m, eta_L, eta_R);
    std::vector<std::string> row{std::to_string(m), std::to_string(o.N * m),
                                 format_double(model)};
    if (o.with_oracle) {
      const LossyRunResult oracle =
          run_lossy_cluster(o.N, o.N * m, eta_L, eta_R);
      row.push_back(format_double(oracle.fidelity));
      row.push_back(format_double(std::abs(model - oracle.fidelity)));
    }
    csv.add_row(row);
  }
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file_bytes(o.out, csv.str());
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// feasibility

struct FeasibilityOpts {
  double tau = 0.0;
  double length = 0.0;
  double speed = 0.0;
  double period = 0.0;
  double bandwidth = 0.0;
  double gamma_R = 0.0;
  double margin = 10.0;
  std::string out;
};

int cmd_feasibility(const FeasibilityOpts& o, const std::string&) {
  FeasibilityParams params;
  if (o.tau > 0.0) params.tau = o.tau;
  if (o.length > 0.0) params.length = o.length;
  if (o.speed > 0.0) params.speed = o.speed;
  params.period = o.period;
  params.bandwidth = o.bandwidth;
  params.gamma_R = o.gamma_R;
  params.margin = o.margin;
  const FeasibilityReport report = check_feasibility(params);
  const std::string text = report.to_json_string();
  std::cout << text;
  if (!o.out.empty()) write_file_bytes(o.out, text);
  return report.verdict ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// wiring

std::string command_line(int argc, char** argv) {
  std::string line = "tapestry";
  for (int i = 1; i < argc; ++i) {
    line += " ";
    line += argv[i];
  }
  return line;
}

// Registers the three sweep families under `parent`; shared between the
// top-level `sweep` command and `fidelity sweep`.
void add_sweep_commands(CLI::App* parent, int* rc, const std::string* command,
                        SweepGateZOpts* gz, SweepGateXOpts* gx,
                        SweepLossOpts* lo) {
  CLI::App* z = parent->add_subcommand(
      "gate-z", "phase-gate fidelity over a bandwidth-ratio grid");
  z->add_option("--x", gz->grid, "grid a:b:count for x = bandwidth/gamma_R");
  z->add_option("--shape", gz->shape, "lorentzian or gaussian");
  z->add_flag("--both-shapes", gz->both_shapes, "emit both shapes as columns");
  z->add_option("--out", gz->out, "CSV output path (default stdout)");
  z->callback([=]() { *rc = cmd_sweep_gate_z(*gz, *command); });

  CLI::App* x = parent->add_subcommand(
      "gate-x", "photon-generation fidelity over a duration grid");
  x->add_option("--product", gx->grid,
                "grid a:b:count for gamma_L*T (lorentzian) or B*T (gaussian)");
  x->add_option("--shape", gx->shape, "lorentzian or gaussian");
  x->add_flag("--both-shapes", gx->both_shapes, "emit both shapes as columns");
  x->add_option("--out", gx->out, "CSV output path (default stdout)");
  x->callback([=]() { *rc = cmd_sweep_gate_x(*gx, *command); });

  CLI::App* l = parent->add_subcommand(
      "loss", "loss-model fidelity versus the number of protocol rounds");
  l->add_option("--n", lo->N, "queue length N");
  l->add_option("--m-max", lo->m_max, "sweep m = 1..m-max rounds");
  l->add_option("--eta", lo->eta, "sets both eta-l and eta-r");
  l->add_option("--eta-l", lo->eta_L, "emission branching ratio");
  l->add_option("--eta-r", lo->eta_R, "scattering branching ratio");
  l->add_flag("--with-oracle", lo->with_oracle,
              "add density-engine columns (caps apply)");
  l->add_option("--out", lo->out, "CSV output path (default stdout)");
  l->callback([=]() { *rc = cmd_sweep_loss(*lo, *command); });
}

int run_cli(int argc, char** argv) {
  const std::string command = command_line(argc, argv);
  int rc = kExitPass;

  CLI::App app{"photonic tape protocol toolkit"};
  app.set_config("--config", "", "read defaults from a config file");
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* generate =
      app.add_subcommand("generate", "run a program and write the state");
  add_program_options(generate, &gen.program);
  generate->add_option("--engine", gen.engine,
                       "stabilizer, statevector, or density");
  generate->add_option("--seed", gen.seed, "measurement sampling seed");
  generate->add_option("--out", gen.out, "output file")->required();
  generate->add_option("--format", gen.format,
                       "json or binary (statevector files)");
  generate->add_flag("--disentangle", gen.disentangle,
                     "measure the emitter out after the run");
  generate->callback([&]() { rc = cmd_generate(gen, command); });

  VerifyOpts ver;
  CLI::App* verify =
      app.add_subcommand("verify", "check a state, tableau, or tensor file");
  verify->add_option("--state", ver.state_path, "statevector file");
  verify->add_option("--tableau", ver.tableau_path, "tableau file");
  verify->add_option("--tensor", ver.tensor_path, "step-tensor file");
  verify->add_option("--n", ver.N, "queue length N of the expected lattice");
  verify->add_option("--k", ver.K, "photon count K of the expected lattice");
  verify->add_flag("--no-emitter", ver.no_emitter,
                   "expect the emitter-free lattice (after --disentangle)");
  verify->add_flag("--toric", ver.toric, "check torus stabilizers instead");
  verify->add_option("--tx", ver.Tx, "torus width");
  verify->add_option("--ty", ver.Ty, "torus height");
  verify->add_option("--tol", ver.tol, "statevector tolerance");
  verify->add_option("--tensor-tol", ver.tensor_tol, "isometry tolerance");
  verify->add_option("--out", ver.out, "also write the report here");
  verify->callback([&]() { rc = cmd_verify(ver, command); });

  ExtractOpts ext;
  CLI::App* extract = app.add_subcommand(
      "extract-tensor", "write one step's tensor in the five-leg layout");
  add_program_options(extract, &ext.program);
  extract->add_option("--step", ext.step,
                      "step to extract (default: first bulk step)");
  extract->add_option("--out", ext.out, "tensor output file")->required();
  extract->callback([&]() { rc = cmd_extract_tensor(ext, command); });

  IsometryOpts iso;
  CLI::App* isometry = app.add_subcommand(
      "check-isometry", "check a tensor file's isometry condition");
  isometry->add_option("--tensor", iso.tensor_path, "tensor file")->required();
  isometry->add_option("--tol", iso.tol, "allowed Gram deviation");
  isometry->add_option("--out", iso.out, "also write the report here");
  isometry->callback([&]() { rc = cmd_check_isometry(iso, command); });

  ContractOpts con;
  CLI::App* contract = app.add_subcommand(
      "contract", "contract a program's tensor network directly");
  add_program_options(contract, &con.program);
  contract->add_option("--mode", con.mode, "full or amplitude");
  contract->add_option("--bits", con.bits,
                       "basis bitstring for amplitude mode (tape then emitter)");
  contract->add_option("--out", con.out, "state output file (full mode)");
  contract->add_option("--format", con.format, "json or binary");
  contract->callback([&]() { rc = cmd_contract(con, command); });

  ToricOpts tor;
  CLI::App* toric = app.add_subcommand(
      "toric", "reference plaquette tensor checks and torus contraction");
  toric->add_option("--candidate", tor.candidate_path,
                    "program file to compare against the reference tensor");
  toric->add_option("--norm", tor.norm, "reference tensor normalization");
  toric->add_option("--tx", tor.Tx, "torus width");
  toric->add_option("--ty", tor.Ty, "torus height");
  toric->add_flag("--no-contract", tor.no_contract,
                  "skip the torus stabilizer check");
  toric->add_option("--isometry-tol", tor.isometry_tol, "Gram tolerance");
  toric->add_option("--stabilizer-tol", tor.stabilizer_tol,
                    "stabilizer expectation tolerance");
  toric->add_option("--distance-tol", tor.distance_tol,
                    "fail when the candidate distance exceeds this");
  toric->add_option("--seed", tor.seed, "optimizer restart seed");
  toric->add_option("--out", tor.out, "also write the report here");
  toric->callback([&]() { rc = cmd_toric(tor, command); });

  CLI::App* fidelity =
      app.add_subcommand("fidelity", "photonic gate and loss fidelities");
  fidelity->require_subcommand(1);

  GateZOpts gz;
  CLI::App* gate_z = fidelity->add_subcommand(
      "gate-z", "phase-gate fidelity at one bandwidth ratio");
  gate_z->add_option("--shape", gz.shape, "lorentzian or gaussian");
  gate_z->add_option("--x", gz.x, "bandwidth / gamma_R");
  gate_z->add_flag("--no-quadrature", gz.no_quadrature,
                   "closed forms only");
  gate_z->add_option("--out", gz.out, "also write the report here");
  gate_z->callback([&]() { rc = cmd_gate_z(gz, command); });

  GateXOpts gx;
  CLI::App* gate_x = fidelity->add_subcommand(
      "gate-x", "photon-generation fidelity for one window duration");
  gate_x->add_option("--shape", gx.shape, "lorentzian or gaussian");
  gate_x->add_option("--product", gx.product,
                     "gamma_L*T (lorentzian) or B*T (gaussian)");
  gate_x->add_flag("--no-quadrature", gx.no_quadrature, "closed forms only");
  gate_x->add_option("--out", gx.out, "also write the report here");
  gate_x->callback([&]() { rc = cmd_gate_x(gx, command); });

  LossOpts lo;
  CLI::App* loss = fidelity->add_subcommand(
      "loss", "loss-model fidelity against the density-engine oracle");
  loss->add_option("--n", lo.N, "queue length N");
  loss->add_option("--m", lo.M, "number of rounds M (photons = N*M)");
  loss->add_option("--eta", lo.eta, "sets both eta-l and eta-r");
  loss->add_option("--eta-l", lo.eta_L, "emission branching ratio");
  loss->add_option("--eta-r", lo.eta_R, "scattering branching ratio");
  loss->add_flag("--no-oracle", lo.no_oracle, "model value only");
  loss->add_option("--out", lo.out, "also write the report here");
  loss->callback([&]() { rc = cmd_loss(lo, command); });

  SweepGateZOpts sgz;
  SweepGateXOpts sgx;
  SweepLossOpts slo;
  CLI::App* sweep =
      app.add_subcommand("sweep", "tabulate fidelities over parameter grids");
  sweep->require_subcommand(1);
  add_sweep_commands(sweep, &rc, &command, &sgz, &sgx, &slo);

  SweepGateZOpts fgz;
  SweepGateXOpts fgx;
  SweepLossOpts flo;
  CLI::App* fsweep = fidelity->add_subcommand(
      "sweep", "tabulate fidelities over parameter grids");
  fsweep->require_subcommand(1);
  add_sweep_commands(fsweep, &rc, &command, &fgz, &fgx, &flo);

  FeasibilityOpts fea;
  CLI::App* feasibility = app.add_subcommand(
      "feasibility", "check the delay-line timing hierarchy");
  feasibility->add_option("--tau", fea.tau, "round-trip delay");
  feasibility->add_option("--length", fea.length, "one-way loop length");
  feasibility->add_option("--speed", fea.speed, "propagation speed");
  feasibility->add_option("--period", fea.period, "step period T")->required();
  feasibility->add_option("--bandwidth", fea.bandwidth, "photon bandwidth B")
      ->required();
  feasibility->add_option("--gamma-r", fea.gamma_R, "loop decay rate")
      ->required();
  feasibility->add_option("--margin", fea.margin,
                          "numeric factor standing in for 'much less than'");
  feasibility->add_option("--out", fea.out, "also write the report here");
  feasibility->callback([&]() { rc = cmd_feasibility(fea, command); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints help for --help (returning 0) and the parse error
    // otherwise; fold the latter into the usage exit code.
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }
  return rc;
}

}  // namespace
}  // namespace tapestry

int main(int argc, char** argv) {
  try {
    return tapestry::run_cli(argc, argv);
  } catch (const tapestry::CapExceededError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return tapestry::kExitCap;
  } catch (const tapestry::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tapestry::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tapestry::kExitUsage;
  }
}
