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
#include "tapestry/pauli.hpp"

#include <bit>

namespace tapestry {

PauliString::PauliString(int n_qubits)
    : n(n_qubits), x(words_for(n_qubits), 0), z(words_for(n_qubits), 0) {}

void PauliString::set_x(int q, bool v) {
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  if (v) {
    x[q >> 6] |= m;
  } else {
    x[q >> 6] &= ~m;
  }
}

void PauliString::set_z(int q, bool v) {
  const std::uint64_t m = std::uint64_t{1} << (q & 63);
  if (v) {
    z[q >> 6] |= m;
  } else {
    z[q >> 6] &= ~m;
  }
}

bool PauliString::is_identity_bits() const {
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] | z[w]) return false;
  }
  return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int acc = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    acc += std::popcount(x[w] & other.z[w]) + std::popcount(z[w] & other.x[w]);
  }
  return (acc & 1) == 0;
}

// Phase exponent of the product of two Pauli rows: P1 * P2 = i^e * P3 with
// P3's bits the XOR of the operands'.  Per qubit the exponent is the
// standard letter-multiplication table; summed via popcounts:
//   e = |x1&z1| + |x2&z2| - |(x1^x2)&(z1^z2)| + 2|z1&x2|  (mod 4).
namespace {
int product_phase_exponent(const PauliString& a, const PauliString& b) {
  long long e = 0;
  for (std::size_t w = 0; w < a.x.size(); ++w) {
    e += std::popcount(a.x[w] & a.z[w]);
    e += std::popcount(b.x[w] & b.z[w]);
    e -= std::popcount((a.x[w] ^ b.x[w]) & (a.z[w] ^ b.z[w]));
    e += 2 * std::popcount(a.z[w] & b.x[w]);
  }
  return static_cast<int>(((e % 4) + 4) % 4);
}
}  // namespace

void PauliString::multiply(const PauliString& other) {
  if (other.n != n) throw ValidationError("Pauli length mismatch");
  const int e = product_phase_exponent(*this, other);
  if (e & 1) {
    throw ValidationError("Pauli product has phase +/-i; only +/-1 is representable");
  }
  for (std::size_t w = 0; w < x.size(); ++w) {
    x[w] ^= other.x[w];
    z[w] ^= other.z[w];
  }
  sign *= other.sign * (e == 2 ? -1 : 1);
}

std::string PauliString::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(sign < 0 ? '-' : '+');
  for (int q = 0; q < n; ++q) {
    const bool xb = x_bit(q);
    const bool zb = z_bit(q);
    out.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
  }
  return out;
}

PauliString PauliString::from_string(const std::string& text) {
  if (text.empty()) throw ValidationError("empty Pauli string");
  std::size_t pos = 0;
  int sign = +1;
  if (text[0] == '+' || text[0] == '-') {
    sign = text[0] == '-' ? -1 : +1;
    pos = 1;
  }
  const int n = static_cast<int>(text.size() - pos);
  if (n == 0) throw ValidationError("Pauli string has no letters");
  PauliString p(n);
  p.sign = sign;
  for (int q = 0; q < n; ++q) {
    switch (text[pos + q]) {
      case 'I':
        break;
      case 'X':
        p.set_x(q, true);
        break;
      case 'Y':
        p.set_x(q, true);
        p.set_z(q, true);
        break;
      case 'Z':
        p.set_z(q, true);
        break;
      default:
        throw ValidationError("bad Pauli letter '" + std::string(1, text[pos + q]) + "'");
    }
  }
  return p;
}

PureState PauliString::apply(const PureState& psi) const {
  if (psi.n() != n) throw ValidationError("qubit count mismatch");
  std::size_t x_mask = 0;
  std::size_t z_mask = 0;
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    if (x_bit(q)) x_mask |= std::size_t{1} << q;
    if (z_bit(q)) z_mask |= std::size_t{1} << q;
    if (x_bit(q) && z_bit(q)) ++n_y;
  }
  const cplx i_pow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  const cplx c = static_cast<double>(sign) * i_pow[n_y & 3];
  std::vector<cplx> out(psi.size());
  const std::vector<cplx>& in = psi.amplitudes();
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const int zpar = std::popcount(idx & z_mask) & 1;
    out[idx ^ x_mask] = (zpar ? -c : c) * in[idx];
  }
  return PureState(n, std::move(out));
}

cplx PauliString::expectation(const PureState& psi) const {
  return psi.inner_product(apply(psi));
}

Membership group_membership(const std::vector<PauliString>& generators,
                            const PauliString& query) {
  // A member of an abelian group commutes with every generator; bail out
  // early so the elimination below never multiplies anticommuting Paulis.
  for (const PauliString& g : generators) {
    if (!query.commutes_with(g)) return Membership::kNo;
  }
  std::vector<PauliString> rows = generators;
  PauliString q = query;
  const int n = q.n;
  std::vector<bool> used(rows.size(), false);
  // Columns: X bits first, then Z bits.
  for (int col = 0; col < 2 * n; ++col) {
    const int qubit = col < n ? col : col - n;
    const bool x_side = col < n;
    auto bit_of = [&](const PauliString& p) {
      return x_side ? p.x_bit(qubit) : p.z_bit(qubit);
    };
    int pivot = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!used[r] && bit_of(rows[r])) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    used[static_cast<std::size_t>(pivot)] = true;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != pivot && !used[r] && bit_of(rows[r])) {
        rows[r].multiply(rows[static_cast<std::size_t>(pivot)]);
      }
    }
    if (bit_of(q)) q.multiply(rows[static_cast<std::size_t>(pivot)]);
  }
  if (!q.is_identity_bits()) return Membership::kNo;
  return q.sign > 0 ? Membership::kYesPlus : Membership::kYesMinus;
}

}  // namespace tapestry
