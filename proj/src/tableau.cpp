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
#include "tapestry/tableau.hpp"

#include <bit>

namespace tapestry {

Tableau::Tableau(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw ValidationError("tableau needs at least one qubit");
  const std::size_t rows = static_cast<std::size_t>(2 * n_ + 1);
  x_.assign(rows * words_, 0);
  z_.assign(rows * words_, 0);
  r_.assign(rows, 0);
  for (int i = 0; i < n_; ++i) {
    x_[idx(i, i >> 6)] |= std::uint64_t{1} << (i & 63);           // destabilizer X_i
    z_[idx(n_ + i, i >> 6)] |= std::uint64_t{1} << (i & 63);      // stabilizer Z_i
  }
}

void Tableau::apply_h(int q) {
  const int w = q >> 6;
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    std::uint64_t& xw = x_[idx(row, w)];
    std::uint64_t& zw = z_[idx(row, w)];
    r_[row] ^= static_cast<std::uint8_t>(((xw & zw & m) != 0));
    const std::uint64_t xb = xw & m;
    const std::uint64_t zb = zw & m;
    xw = (xw & ~m) | zb;
    zw = (zw & ~m) | xb;
  }
}

void Tableau::apply_x(int q) {
  const int w = q >> 6;
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    r_[row] ^= static_cast<std::uint8_t>((z_[idx(row, w)] & m) != 0);
  }
}

void Tableau::apply_z(int q) {
  const int w = q >> 6;
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    r_[row] ^= static_cast<std::uint8_t>((x_[idx(row, w)] & m) != 0);
  }
}

void Tableau::apply_s(int q) {
  const int w = q >> 6;
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    const std::uint64_t xb = x_[idx(row, w)] & m;
    std::uint64_t& zw = z_[idx(row, w)];
    r_[row] ^= static_cast<std::uint8_t>((xb & zw) != 0);
    zw ^= xb;
  }
}

void Tableau::apply_cz(int a, int b) {
  if (a == b) throw ValidationError("CZ needs distinct qubits");
  const int wa = a >> 6, wb = b >> 6;
  const std::uint64_t ma = std::uint64_t{1} << (a & 63);
  const std::uint64_t mb = std::uint64_t{1} << (b & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    const bool xa = (x_[idx(row, wa)] & ma) != 0;
    const bool xb = (x_[idx(row, wb)] & mb) != 0;
    const bool za = (z_[idx(row, wa)] & ma) != 0;
    const bool zb = (z_[idx(row, wb)] & mb) != 0;
    r_[row] ^= static_cast<std::uint8_t>(xa && xb && (za != zb));
    if (xb) z_[idx(row, wa)] ^= ma;
    if (xa) z_[idx(row, wb)] ^= mb;
  }
}

void Tableau::apply_cx(int control, int target) {
  if (control == target) throw ValidationError("CX needs distinct qubits");
  const int wc = control >> 6, wt = target >> 6;
  const std::uint64_t mc = std::uint64_t{1} << (control & 63);
  const std::uint64_t mt = std::uint64_t{1} << (target & 63);
  for (int row = 0; row < 2 * n_; ++row) {
    const bool xc = (x_[idx(row, wc)] & mc) != 0;
    const bool zc = (z_[idx(row, wc)] & mc) != 0;
    const bool xt = (x_[idx(row, wt)] & mt) != 0;
    const bool zt = (z_[idx(row, wt)] & mt) != 0;
    r_[row] ^= static_cast<std::uint8_t>(xc && zt && (xt == zc));
    if (xc) x_[idx(row, wt)] ^= mt;
    if (zt) z_[idx(row, wc)] ^= mc;
  }
}

void Tableau::apply_gate(const GateOp& op, const std::vector<int>& qubits) {
  switch (op.kind) {
    case GateKind::H:
      apply_h(qubits.at(0));
      return;
    case GateKind::X:
      apply_x(qubits.at(0));
      return;
    case GateKind::Z:
      apply_z(qubits.at(0));
      return;
    case GateKind::S:
      apply_s(qubits.at(0));
      return;
    case GateKind::CZ:
      apply_cz(qubits.at(0), qubits.at(1));
      return;
    case GateKind::CX:
      apply_cx(qubits.at(0), qubits.at(1));
      return;
    default:
      throw ValidationError("gate kind '" + gate_kind_name(op.kind) +
                            "' is not a Clifford unitary");
  }
}

void Tableau::rowmult(int a, int b) {
  long long e = 0;
  for (int w = 0; w < words_; ++w) {
    const std::uint64_t x1 = x_[idx(a, w)], z1 = z_[idx(a, w)];
    const std::uint64_t x2 = x_[idx(b, w)], z2 = z_[idx(b, w)];
    e += std::popcount(x1 & z1) + std::popcount(x2 & z2);
    e -= std::popcount((x1 ^ x2) & (z1 ^ z2));
    e += 2 * std::popcount(z1 & x2);
  }
  const int em = static_cast<int>(((e % 4) + 4) % 4);
  r_[a] = static_cast<std::uint8_t>(r_[a] ^ r_[b] ^ (em == 2 ? 1 : 0));
  for (int w = 0; w < words_; ++w) {
    x_[idx(a, w)] ^= x_[idx(b, w)];
    z_[idx(a, w)] ^= z_[idx(b, w)];
  }
}

void Tableau::row_copy(int dst, int src) {
  for (int w = 0; w < words_; ++w) {
    x_[idx(dst, w)] = x_[idx(src, w)];
    z_[idx(dst, w)] = z_[idx(src, w)];
  }
  r_[dst] = r_[src];
}

void Tableau::row_clear(int row) {
  for (int w = 0; w < words_; ++w) {
    x_[idx(row, w)] = 0;
    z_[idx(row, w)] = 0;
  }
  r_[row] = 0;
}

MeasureResult Tableau::measure_z(int q, Rng& rng, std::optional<int> forced) {
  int p = -1;
  for (int row = n_; row < 2 * n_; ++row) {
    if (xbit(row, q)) {
      p = row;
      break;
    }
  }
  if (p >= 0) {
    // Random outcome: Z_q anticommutes with stabilizer row p.
    for (int row = 0; row < 2 * n_; ++row) {
      if (row != p && xbit(row, q)) rowmult(row, p);
    }
    row_copy(p - n_, p);
    row_clear(p);
    z_[idx(p, q >> 6)] |= std::uint64_t{1} << (q & 63);
    const int outcome = forced ? *forced : (rng.coin() ? -1 : +1);
    r_[p] = static_cast<std::uint8_t>(outcome == -1 ? 1 : 0);
    return {outcome, false};
  }
  // Deterministic outcome: accumulate into the scratch row the stabilizer
  // partners of every destabilizer that anticommutes with Z_q.
  const int scratch = 2 * n_;
  row_clear(scratch);
  for (int i = 0; i < n_; ++i) {
    if (xbit(i, q)) rowmult(scratch, i + n_);
  }
  const int outcome = r_[scratch] ? -1 : +1;
  if (forced && *forced != outcome) {
    throw ValidationError("forced outcome contradicts a deterministic measurement");
  }
  return {outcome, true};
}

MeasureResult Tableau::measure_x(int q, Rng& rng, std::optional<int> forced) {
  apply_h(q);
  const MeasureResult res = measure_z(q, rng, forced);
  apply_h(q);
  return res;
}

PauliString Tableau::stabilizer(int i) const {
  PauliString p(n_);
  for (int w = 0; w < words_; ++w) {
    p.x[w] = x_[idx(n_ + i, w)];
    p.z[w] = z_[idx(n_ + i, w)];
  }
  p.sign = r_[n_ + i] ? -1 : +1;
  return p;
}

PauliString Tableau::destabilizer(int i) const {
  PauliString p(n_);
  for (int w = 0; w < words_; ++w) {
    p.x[w] = x_[idx(i, w)];
    p.z[w] = z_[idx(i, w)];
  }
  p.sign = r_[i] ? -1 : +1;
  return p;
}

std::vector<PauliString> Tableau::stabilizers() const {
  std::vector<PauliString> out;
  out.reserve(n_);
  for (int i = 0; i < n_; ++i) out.push_back(stabilizer(i));
  return out;
}

Membership Tableau::contains(const PauliString& pauli) const {
  if (pauli.n != n_) throw ValidationError("Pauli length mismatch");
  return group_membership(stabilizers(), pauli);
}

std::vector<std::string> Tableau::generator_strings() const {
  std::vector<std::string> out;
  out.reserve(n_);
  for (int i = 0; i < n_; ++i) out.push_back(stabilizer(i).to_string());
  return out;
}

}  // namespace tapestry
