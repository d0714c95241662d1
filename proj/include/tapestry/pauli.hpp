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
#ifndef TAPESTRY_PAULI_HPP_
#define TAPESTRY_PAULI_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/statevector.hpp"

namespace tapestry {

// Signed n-qubit Pauli operator with bit-packed X and Z masks; a qubit with
// both bits set carries Y (with the factor i accounted for in `sign`, which
// is restricted to +1/-1; products that would leave a stray i throw).
struct PauliString {
  int n = 0;
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> z;
  int sign = +1;

  explicit PauliString(int n_qubits);

  static int words_for(int n) { return (n + 63) / 64; }

  bool x_bit(int q) const { return (x[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(int q) const { return (z[q >> 6] >> (q & 63)) & 1; }
  void set_x(int q, bool v);
  void set_z(int q, bool v);

  bool is_identity_bits() const;  // ignores sign
  bool commutes_with(const PauliString& other) const;

  // In-place multiplication this <- this * other with phase tracking; the
  // result must be a +/-1 Pauli (an odd power of i throws).
  void multiply(const PauliString& other);

  // "+XZY..." / "-IZX..." encoding, leading sign then one letter per qubit
  // from qubit 0 upward.
  std::string to_string() const;
  static PauliString from_string(const std::string& text);

  // <psi| P |psi> evaluated on the dense engine.
  cplx expectation(const PureState& psi) const;
  // P|psi> as a new state (used by expectation and by tests).
  PureState apply(const PureState& psi) const;
};

enum class Membership { kYesPlus, kYesMinus, kNo };

// Whether +query or -query lies in the group generated by `generators`
// (which must be independent and mutually commuting).  Resolved by Gaussian
// elimination over GF(2) with sign accumulation: the query is multiplied by
// pivot generators until its X/Z bits vanish; the surviving sign decides
// between kYesPlus and kYesMinus.
Membership group_membership(const std::vector<PauliString>& generators,
                            const PauliString& query);

}  // namespace tapestry

#endif  // TAPESTRY_PAULI_HPP_
