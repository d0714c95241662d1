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
#include "tapestry/gates.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace tapestry {

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CZ:
    case GateKind::CX:
    case GateKind::Unitary2:
      return 2;
    default:
      return 1;
  }
}

bool gate_is_clifford_unitary(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::CZ:
    case GateKind::CX:
      return true;
    default:
      return false;
  }
}

std::vector<cplx> gate_matrix(const GateOp& op) {
  const double s = kInvSqrt2;
  switch (op.kind) {
    case GateKind::H:
      return {s, s, s, -s};
    case GateKind::X:
      return {0, 1, 1, 0};
    case GateKind::Z:
      return {1, 0, 0, -1};
    case GateKind::S:
      return {1, 0, 0, cplx(0, 1)};
    case GateKind::CZ:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::CX: {
      // Basis index is bit(control) + 2*bit(target); control set flips target.
      std::vector<cplx> m(16, 0.0);
      m[0 * 4 + 0] = 1;
      m[3 * 4 + 1] = 1;
      m[2 * 4 + 2] = 1;
      m[1 * 4 + 3] = 1;
      return m;
    }
    case GateKind::Unitary1:
    case GateKind::Unitary2:
      return op.matrix;
    case GateKind::MeasureX:
      throw ValidationError("MeasureX has no unitary matrix");
  }
  throw ValidationError("unknown gate kind");
}

double unitarity_deviation(const std::vector<cplx>& m, int dim) {
  double worst = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        acc += std::conj(m[static_cast<std::size_t>(k) * dim + r]) *
               m[static_cast<std::size_t>(k) * dim + c];
      }
      double dev = std::abs(acc - (r == c ? cplx(1.0) : cplx(0.0)));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

namespace {
const std::array<std::string, 9> kGateNames = {
    "H", "X", "Z", "S", "CZ", "CX", "MeasureX", "Unitary1", "Unitary2"};
}  // namespace

const std::string& gate_kind_name(GateKind kind) {
  return kGateNames[static_cast<int>(kind)];
}

GateKind gate_kind_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) return static_cast<GateKind>(i);
  }
  throw ValidationError("unknown gate kind '" + name + "'");
}

}  // namespace tapestry
