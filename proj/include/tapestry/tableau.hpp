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
#ifndef TAPESTRY_TABLEAU_HPP_
#define TAPESTRY_TABLEAU_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/gates.hpp"
#include "tapestry/pauli.hpp"
#include "tapestry/rng.hpp"

namespace tapestry {

struct MeasureResult {
  int outcome = +1;  // +1 or -1
  bool deterministic = false;
};

// Binary symplectic tableau over n qubits holding n destabilizer and n
// stabilizer generators plus one scratch row, with bit-packed X/Z matrices
// and a +/- phase per row.  Gate updates are O(n); measurements are O(n^2)
// worst case via destabilizer bookkeeping.
class Tableau {
 public:
  explicit Tableau(int n);  // |0...0>: destabilizers X_i, stabilizers Z_i

  int n() const { return n_; }

  void apply_h(int q);
  void apply_x(int q);
  void apply_z(int q);
  void apply_s(int q);
  void apply_cz(int a, int b);
  void apply_cx(int control, int target);
  // Clifford unitaries only (H, X, Z, S, CZ, CX); throws on other kinds.
  void apply_gate(const GateOp& op, const std::vector<int>& qubits);

  // Z- or X-basis measurement.  A random outcome consumes one coin from rng;
  // `forced` overrides it (and throws if a deterministic outcome disagrees).
  MeasureResult measure_z(int q, Rng& rng, std::optional<int> forced = std::nullopt);
  MeasureResult measure_x(int q, Rng& rng, std::optional<int> forced = std::nullopt);

  // Stabilizer generator i as a signed Pauli string.
  PauliString stabilizer(int i) const;
  std::vector<PauliString> stabilizers() const;
  PauliString destabilizer(int i) const;

  // Group membership of +/-pauli in the stabilizer group.
  Membership contains(const PauliString& pauli) const;

  // "+XZI..." strings, one per stabilizer generator.
  std::vector<std::string> generator_strings() const;

 private:
  bool xbit(int row, int q) const { return (x_[idx(row, q >> 6)] >> (q & 63)) & 1; }
  bool zbit(int row, int q) const { return (z_[idx(row, q >> 6)] >> (q & 63)) & 1; }
  std::size_t idx(int row, int word) const {
    return static_cast<std::size_t>(row) * words_ + word;
  }
  // row a <- row a * row b (Pauli product with phase bookkeeping).
  void rowmult(int a, int b);
  void row_copy(int dst, int src);
  void row_clear(int row);

  int n_;
  int words_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::vector<std::uint8_t> r_;  // 0 for +, 1 for -
};

}  // namespace tapestry

#endif  // TAPESTRY_TABLEAU_HPP_
