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
// Checks whether a delay-line layout satisfies the timing hierarchy the
// protocol needs: the queue length must match the round-trip delay, the
// delay must hold many photon wavepackets, and each wavepacket must be
// spectrally narrow compared to the emitter linewidth.
#ifndef TAPESTRY_FEASIBILITY_HPP_
#define TAPESTRY_FEASIBILITY_HPP_

#include <optional>
#include <string>

#include "tapestry/common.hpp"

namespace tapestry {

// Physical layout parameters. The round-trip delay may be given directly as
// tau or derived from the loop length and propagation speed; supplying both
// consistently is allowed, supplying conflicting values is an error.
struct FeasibilityParams {
  std::optional<double> tau;      // round-trip delay
  std::optional<double> length;   // one-way mirror distance L (tau = 2L/c)
  std::optional<double> speed;    // propagation speed c
  double period = 0.0;            // step period T
  double bandwidth = 0.0;         // photon bandwidth B
  double gamma_R = 0.0;           // decay rate into the loop
  double margin = 10.0;           // numeric stand-in for "much less than"
};

struct IneqCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct FeasibilityReport {
  double tau = 0.0;         // resolved round-trip delay
  double N_inferred = 0.0;  // tau/T + 1/2
  bool integral = false;    // N_inferred is an integer to 1e-9 relative
  IneqCheck ineq1;          // N * margin <= tau * B
  IneqCheck ineq2;          // tau * B * margin <= gamma_R * tau
  bool verdict = false;     // all three checks pass

  std::string to_json_string() const;
};

// Evaluates the timing hierarchy. Throws ValidationError for non-positive
// inputs or a tau that conflicts with 2L/c.
FeasibilityReport check_feasibility(const FeasibilityParams& params);

}  // namespace tapestry

#endif  // TAPESTRY_FEASIBILITY_HPP_
