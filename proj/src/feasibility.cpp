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
#include "tapestry/feasibility.hpp"

#include <cmath>

#include "json.hpp"

namespace tapestry {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw ValidationError(std::string(name) + " must be > 0");
  }
}

double resolve_tau(const FeasibilityParams& p) {
  if (p.length.has_value() != p.speed.has_value()) {
    throw ValidationError("length and speed must be given together");
  }
  std::optional<double> derived;
  if (p.length.has_value()) {
    require_positive(*p.length, "length");
    require_positive(*p.speed, "speed");
    derived = 2.0 * *p.length / *p.speed;
  }
  if (p.tau.has_value()) {
    require_positive(*p.tau, "tau");
    if (derived.has_value() &&
        std::abs(*p.tau - *derived) > 1e-9 * std::max(*p.tau, *derived)) {
      throw ValidationError("tau conflicts with 2 * length / speed");
    }
    return *p.tau;
  }
  if (!derived.has_value()) {
    throw ValidationError("either tau or length and speed are required");
  }
  return *derived;
}

}  // namespace

FeasibilityReport check_feasibility(const FeasibilityParams& params) {
  require_positive(params.period, "period");
  require_positive(params.bandwidth, "bandwidth");
  require_positive(params.gamma_R, "gamma_R");
  require_positive(params.margin, "margin");

  FeasibilityReport report;
  report.tau = resolve_tau(params);
  report.N_inferred = report.tau / params.period + 0.5;
  const double nearest = std::round(report.N_inferred);
  report.integral =
      nearest >= 1.0 &&
      std::abs(report.N_inferred - nearest) <= 1e-9 * report.N_inferred;

  report.ineq1.lhs = nearest * params.margin;
  report.ineq1.rhs = report.tau * params.bandwidth;
  report.ineq1.pass = report.ineq1.lhs <= report.ineq1.rhs;

  report.ineq2.lhs = report.tau * params.bandwidth * params.margin;
  report.ineq2.rhs = params.gamma_R * report.tau;
  report.ineq2.pass = report.ineq2.lhs <= report.ineq2.rhs;

  report.verdict = report.integral && report.ineq1.pass && report.ineq2.pass;
  return report;
}

std::string FeasibilityReport::to_json_string() const {
  nlohmann::ordered_json j;
  j["N_inferred"] = N_inferred;
  j["integral"] = integral;
  j["ineq1"] = {{"lhs", ineq1.lhs}, {"rhs", ineq1.rhs}, {"pass", ineq1.pass}};
  j["ineq2"] = {{"lhs", ineq2.lhs}, {"rhs", ineq2.rhs}, {"pass", ineq2.pass}};
  j["verdict"] = verdict;
  return j.dump(2) + "\n";
}

}  // namespace tapestry
