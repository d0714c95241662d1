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
#ifndef TAPESTRY_CONTRACTION_HPP_
#define TAPESTRY_CONTRACTION_HPP_

#include <string>
#include <vector>

#include "tapestry/program.hpp"
#include "tapestry/statevector.hpp"
#include "tapestry/tensor.hpp"

namespace tapestry {

// Contracts the program's step tensors along the delay-line bonds and the
// emitter line, treating the network as a matrix-product sweep with the N
// in-flight bonds plus the emitter as the moving boundary.  The result is
// the same state run() produces (tape photon t on qubit t-1, emitter on
// qubit p*K), obtained without ever touching gates: it is an independent
// path from step tensors to the output.
PureState contract_protocol_network(const ProtocolProgram& program);

// Single amplitude <bits|output>: `bits` holds one 0/1 per qubit in the run
// layout (tape 1..pK, then the emitter).  Boundary memory stays at
// 2^(N+1) regardless of K.
cplx contract_amplitude(const ProtocolProgram& program,
                        const std::vector<int>& bits);

// Contracts a p=4 step tensor as the site tensor of a Tx x Ty torus:
// site (x,y)'s outgoing bond a meets leg c of site (x, y+1) and its
// emitter leg b meets leg d of site (x+1, y), both directions periodic.
// Physical leg i_j of site (x,y) lands on qubit 4*(y*Tx + x) + (j-1).
// The result is normalized.
PureState contract_torus(const StepTensor& tensor, int Tx, int Ty);

enum class ToricConvention { kXStars, kZStars };

struct ToricCheck {
  std::string label;
  std::string op;
  double expectation = 0.0;
  bool pass = false;
};

struct ToricReport {
  ToricConvention convention = ToricConvention::kXStars;
  bool pass = false;
  double worst = 0.0;  // largest |expectation - 1|
  std::vector<ToricCheck> checks;
};

// Evaluates the commuting check operators of the torus state: one four-body
// operator per lattice node (stars) and one per face (plaquettes).  Under
// kXStars the node operators are X-type and the face operators Z-type;
// kZStars swaps the letters.
ToricReport verify_toric_stabilizers(const PureState& state, int Tx, int Ty,
                                     ToricConvention convention, double tol);

}  // namespace tapestry

#endif  // TAPESTRY_CONTRACTION_HPP_
