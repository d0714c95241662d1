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
// End-to-end checks of the command-line tool: exit codes, report contents,
// and reproducibility of the files it writes.  Each test shells out to the
// real binary, whose path the build system passes in as TAPESTRY_BIN_PATH.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tapestry/common.hpp"
#include "tapestry/io.hpp"

namespace tapestry {
namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TAPESTRY_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json parse_output(const CommandResult& result) {
  CAPTURE(result.output);
  return nlohmann::json::parse(result.output);
}

struct TempDir {
  std::filesystem::path dir;

  TempDir() {
    std::string templ =
        (std::filesystem::temp_directory_path() / "tapestry_cli_XXXXXX")
            .string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    REQUIRE(mkdtemp(buf.data()) != nullptr);
    dir = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

TEST_CASE("cli: help and usage errors") {
  const CommandResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("generate") != std::string::npos);
  CHECK(help.output.find("feasibility") != std::string::npos);

  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("generate --frobnicate").exit_code == 2);
  // --out is required.
  CHECK(run_cli("generate --builtin cluster").exit_code == 2);
  // Built-in and file programs are mutually exclusive.
  TempDir tmp;
  CHECK(run_cli("generate --builtin cluster --program x.json --out " +
                tmp.path("s.json"))
            .exit_code == 2);
}

TEST_CASE("cli: generate and verify a stabilizer tableau") {
  TempDir tmp;
  const std::string tableau = tmp.path("tableau.json");
  const CommandResult gen =
      run_cli("generate --builtin cluster --n 2 --k 4 --out " + tableau);
  REQUIRE(gen.exit_code == 0);
  CHECK(parse_output(gen)["format"].get<std::string>() == "tableau-json");

  const CommandResult ver =
      run_cli("verify --tableau " + tableau + " --n 2 --k 4");
  CHECK(ver.exit_code == 0);
  CHECK(parse_output(ver)["pass"].get<bool>());

  // The same tableau is not the N=3 lattice.
  const CommandResult wrong =
      run_cli("verify --tableau " + tableau + " --n 3 --k 4");
  CHECK(wrong.exit_code == 1);
  CHECK_FALSE(parse_output(wrong)["pass"].get<bool>());
}

TEST_CASE("cli: generate and verify a statevector, then tamper with it") {
  TempDir tmp;
  const std::string state = tmp.path("state.json");
  const CommandResult gen = run_cli(
      "generate --builtin cluster --n 2 --k 5 --engine statevector --out " +
      state);
  REQUIRE(gen.exit_code == 0);
  CHECK(parse_output(gen)["format"].get<std::string>() == "state-json");

  CHECK(run_cli("verify --state " + state + " --n 2 --k 5").exit_code == 0);

  // Apply a Z error on photon qubit 3 by hand: flip the sign of every
  // amplitude whose basis index has bit 3 set.  Photon qubit q carries
  // lattice vertex q + 1 (vertex 0 is the emitter), so exactly the check
  // for vertex 4 must fail.
  nlohmann::json j = nlohmann::json::parse(read_file_bytes(state));
  auto& flat = j["amplitudes"];
  for (std::size_t i = 0; i * 2 < flat.size(); ++i) {
    if (i & (std::size_t{1} << 3)) {
      flat[2 * i] = -flat[2 * i].get<double>();
      flat[2 * i + 1] = -flat[2 * i + 1].get<double>();
    }
  }
  write_file_bytes(state, j.dump());

  const CommandResult bad = run_cli("verify --state " + state + " --n 2 --k 5");
  CHECK(bad.exit_code == 1);
  const nlohmann::json report = parse_output(bad);
  CHECK_FALSE(report["pass"].get<bool>());
  REQUIRE(report["report"]["failing_vertices"].size() == 1);
  CHECK(report["report"]["failing_vertices"][0].get<int>() == 4);
}

TEST_CASE("cli: resource caps exit with their own code") {
  TempDir tmp;
  const CommandResult capped = run_cli(
      "generate --builtin cluster --n 2 --k 30 --engine statevector --out " +
      tmp.path("s.json"));
  CHECK(capped.exit_code == 3);
  CHECK(capped.output.find("resource cap") != std::string::npos);
}

TEST_CASE("cli: identical commands write identical bytes") {
  TempDir tmp;
  const std::string out = tmp.path("state.bin");
  const std::string cmd =
      "generate --builtin cluster --n 2 --k 4 --engine statevector --seed 5 "
      "--format binary --out " +
      out;
  REQUIRE(run_cli(cmd).exit_code == 0);
  const std::string first = read_file_bytes(out);
  REQUIRE(run_cli(cmd).exit_code == 0);
  CHECK(read_file_bytes(out) == first);
}

TEST_CASE("cli: density engine export") {
  TempDir tmp;
  const std::string out = tmp.path("rho.bin");
  const CommandResult gen = run_cli(
      "generate --builtin cluster --n 1 --k 3 --engine density --out " + out);
  REQUIRE(gen.exit_code == 0);
  CHECK(parse_output(gen)["format"].get<std::string>() == "density-binary");
  CHECK(std::filesystem::file_size(out) > 0);
}

TEST_CASE("cli: disentangled state verifies without the emitter") {
  TempDir tmp;
  const std::string state = tmp.path("state.json");
  const CommandResult gen = run_cli(
      "generate --builtin cluster --n 2 --k 4 --engine statevector "
      "--disentangle --seed 3 --out " +
      state);
  REQUIRE(gen.exit_code == 0);
  const nlohmann::json summary = parse_output(gen);
  REQUIRE(summary.contains("disentangle"));
  const int outcome = summary["disentangle"]["outcome"].get<int>();
  CHECK((outcome == 1 || outcome == -1));

  CHECK(run_cli("verify --state " + state + " --n 2 --k 4 --no-emitter")
            .exit_code == 0);
}

TEST_CASE("cli: tensor extraction and isometry check round-trip") {
  TempDir tmp;
  const std::string tensor = tmp.path("step.tensor");
  const CommandResult ext = run_cli(
      "extract-tensor --builtin cluster --n 2 --k 4 --out " + tensor);
  REQUIRE(ext.exit_code == 0);
  // Default step is the first bulk step, N + 1.
  CHECK(parse_output(ext)["step"].get<int>() == 3);

  const CommandResult iso = run_cli("check-isometry --tensor " + tensor);
  CHECK(iso.exit_code == 0);
  CHECK(parse_output(iso)["pass"].get<bool>());

  // An absurd tolerance flips the verdict but is still a clean run.
  CHECK(run_cli("check-isometry --tensor " + tensor + " --tol 1e-30")
            .exit_code == 1);

  // A truncated payload is a usage-level error.
  const std::string bytes = read_file_bytes(tensor);
  write_file_bytes(tensor, bytes.substr(0, bytes.size() - 8));
  CHECK(run_cli("check-isometry --tensor " + tensor).exit_code == 2);
}

TEST_CASE("cli: direct contraction matches the simulated state") {
  TempDir tmp;
  const std::string state = tmp.path("contracted.json");
  const CommandResult full = run_cli(
      "contract --builtin cluster --n 2 --k 4 --mode full --out " + state);
  REQUIRE(full.exit_code == 0);
  CHECK(std::abs(parse_output(full)["norm"].get<double>() - 1.0) < 1e-10);
  CHECK(run_cli("verify --state " + state + " --n 2 --k 4").exit_code == 0);

  // Every amplitude of this 6-qubit graph state has modulus 2^-3.
  const CommandResult amp = run_cli(
      "contract --builtin cluster --n 2 --k 5 --mode amplitude "
      "--bits 010011");
  REQUIRE(amp.exit_code == 0);
  CHECK(std::abs(parse_output(amp)["abs"].get<double>() - 0.125) < 1e-12);

  CHECK(run_cli("contract --builtin cluster --n 2 --k 5 --mode amplitude "
                "--bits 01201")
            .exit_code == 2);
}

TEST_CASE("cli: toric reference checks and candidate comparison") {
  const CommandResult ref = run_cli("toric --tx 2 --ty 2");
  REQUIRE(ref.exit_code == 0);
  const nlohmann::json j = parse_output(ref);
  CHECK(j["pass"].get<bool>());
  CHECK(j["reference_isometry"]["pass"].get<bool>());
  CHECK(j["torus"]["passing_convention"].get<std::string>() == "x-stars");
  CHECK(j["torus"]["n_qubits"].get<int>() == 16);

  const std::string candidate =
      std::string(TAPESTRY_SOURCE_DIR) + "/configs/toric_candidate.json";
  const CommandResult cand = run_cli("toric --no-contract --candidate " +
                                     candidate + " --distance-tol 1e-6");
  REQUIRE(cand.exit_code == 0);
  const nlohmann::json cj = parse_output(cand);
  CHECK(cj["pass"].get<bool>());
  CHECK(cj["candidate"]["isometry"]["pass"].get<bool>());
  CHECK(cj["candidate"]["distance_after_local_unitaries"].get<double>() <=
        1e-6);
}

TEST_CASE("cli: phase gate fidelity report") {
  const CommandResult r = run_cli("fidelity gate-z --shape lorentzian --x 1");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = parse_output(r);
  CHECK(j["overlap_closed"].get<double>() == 0.0);
  CHECK(j["fidelity"].get<double>() == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(j["abs_difference"].get<double>() < 1e-6);

  CHECK(run_cli("fidelity gate-z --shape square --x 1").exit_code == 2);
}

TEST_CASE("cli: photon generation fidelity report") {
  const CommandResult r = run_cli(
      "fidelity gate-x --shape gaussian --product 4 --no-quadrature");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = parse_output(r);
  CHECK(j["eps_closed"].get<double>() ==
        doctest::Approx(0.12206777762560942553).epsilon(1e-12));
  CHECK(j["fidelity"].get<double>() ==
        doctest::Approx(0.92110490530533625516).epsilon(1e-12));
  CHECK_FALSE(j.contains("eps_quadrature"));

  CHECK(run_cli("fidelity gate-x --product 0").exit_code == 2);
}

TEST_CASE("cli: loss model against the density oracle") {
  const CommandResult r = run_cli("fidelity loss --n 2 --m 2 --eta 50");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = parse_output(r);
  CHECK(j["photons"].get<int>() == 4);
  const double per =
      (50.0 / 51.0) * ((49.0 / 51.0) * (49.0 / 51.0));
  CHECK(j["model_fidelity"].get<double>() ==
        doctest::Approx(per * per).epsilon(1e-12));
  CHECK(j["p_emit"].get<double>() == doctest::Approx(50.0 / 51.0));
  // The amplitude-counted model sits well below the simulated fidelity at
  // this depth; the report must carry that gap, not hide it.
  const double gap = j["abs_difference"].get<double>();
  CHECK(gap > 0.05);
  CHECK(gap < 0.2);

  CHECK(run_cli("fidelity loss --eta 50 --eta-l 10").exit_code == 2);
}

TEST_CASE("cli: feasibility verdict drives the exit code") {
  const CommandResult pass = run_cli(
      "feasibility --tau 3.5 --period 1 --bandwidth 400 --gamma-r 12000");
  CHECK(pass.exit_code == 0);
  const nlohmann::json pj = parse_output(pass);
  CHECK(pj["verdict"].get<bool>());
  CHECK(pj["N_inferred"].get<double>() == 4.0);

  const CommandResult fail = run_cli(
      "feasibility --tau 3.5 --period 1 --bandwidth 20 --gamma-r 100");
  CHECK(fail.exit_code == 1);
  const nlohmann::json fj = parse_output(fail);
  CHECK_FALSE(fj["verdict"].get<bool>());
  CHECK_FALSE(fj["ineq2"]["pass"].get<bool>());

  // Conflicting delay specifications are a usage error.
  CHECK(run_cli("feasibility --tau 3 --length 1.75 --speed 1 --period 1 "
                "--bandwidth 400 --gamma-r 12000")
            .exit_code == 2);
}

TEST_CASE("cli: sweep tables") {
  TempDir tmp;
  const std::string csv_path = tmp.path("sweep.csv");
  REQUIRE(run_cli("sweep gate-z --x 0.01:1:50 --both-shapes --out " +
                  csv_path)
              .exit_code == 0);
  const std::string csv = read_file_bytes(csv_path);
  CHECK(csv.rfind("# tool: tapestry 1.0.0\n", 0) == 0);
  CHECK(csv.find("x,overlap_lorentzian,fidelity_lorentzian,"
                 "overlap_gaussian,fidelity_gaussian\n") != std::string::npos);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  // Three comment lines, one header, fifty data rows.
  CHECK(rows == 54);

  // The same sweeps are reachable under `fidelity sweep`.
  const CommandResult alias = run_cli("fidelity sweep gate-x --product 4:4:1");
  CHECK(alias.exit_code == 0);
  CHECK(alias.output.find("product,eps_gaussian,fidelity_gaussian\n") !=
        std::string::npos);
  // Fifteen digits of the known eps(B T = 4) value; the final couple of
  // digits are allowed to wiggle with the platform's erf implementation.
  CHECK(alias.output.find("4,0.122067777625609") != std::string::npos);

  CHECK(run_cli("sweep gate-z --x nonsense").exit_code == 2);
}

}  // namespace
}  // namespace tapestry
