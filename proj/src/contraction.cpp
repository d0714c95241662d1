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
#include "tapestry/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tapestry/pauli.hpp"

namespace tapestry {
namespace {

// Boundary sweep shared by the full-state and single-amplitude modes.  The
// moving boundary holds the N delay-line bonds (bit j carries the bond that
// step k consumes, j = (k-1) mod N) and the emitter (bit N); the full mode
// appends each emitted photon above, the amplitude mode contracts it with
// the requested outcome bit on the spot.
struct Sweep {
  const ProtocolProgram& program;
  std::vector<cplx> boundary;
  int n_bits = 0;
  // Tape index living on each bit; the emitter uses p*K + 1 and bonds that
  // predate the protocol (steps k <= N consume them as |0>) use values <= 0.
  std::vector<int> id_of_bit;

  explicit Sweep(const ProtocolProgram& prog) : program(prog) {
    const int N = program.N;
    n_bits = N + 1;
    boundary.assign(std::size_t{1} << n_bits, cplx(0, 0));
    if (program.emitter_init == QubitInit::kPlus) {
      boundary[0] = kInvSqrt2;
      boundary[std::size_t{1} << N] = kInvSqrt2;
    } else {
      boundary[0] = cplx(1, 0);
    }
    id_of_bit.resize(static_cast<std::size_t>(n_bits));
    for (int j = 0; j < N; ++j) {
      id_of_bit[static_cast<std::size_t>(j)] =
          (j - N) * program.p + program.queue_slot;
    }
    id_of_bit[static_cast<std::size_t>(N)] = emitter_id();
  }

  int emitter_id() const { return program.tape_qubits() + 1; }

  // Advances the boundary across step k.  `required` selects the outcome
  // bit of each emitted tape photon (amplitude mode); empty means append
  // the photon as a new boundary bit (full mode).
  void advance(int k, const StepTensor& t, const std::vector<int>& required) {
    const int N = program.N;
    const int p = program.p;
    const int j = (k - 1) % N;
    const bool real_exit = program.returning_tape(k) >= 1;
    const bool select = !required.empty();

    std::vector<int> fresh_out;  // non-queue slots, the tensor's i2..ip
    for (int s = 1; s <= p; ++s) {
      if (s != program.queue_slot) fresh_out.push_back(s);
    }

    const int appended = select ? 0 : (real_exit ? 1 : 0) + p - 1;
    const int new_bits = n_bits + appended;
    std::vector<cplx> next(std::size_t{1} << new_bits, cplx(0, 0));

    // In amplitude mode the physical legs are pinned, leaving only (a, b)
    // free; in full mode all of (i_flat, a, b) are enumerated.
    int pinned_i_flat = 0;
    if (select) {
      int i1 = 0;
      if (real_exit) i1 = required[static_cast<std::size_t>(program.returning_tape(k) - 1)];
      pinned_i_flat = i1;
      for (int s : fresh_out) {
        pinned_i_flat = (pinned_i_flat << 1) |
                        required[static_cast<std::size_t>(program.fresh_tape(k, s) - 1)];
      }
    }

    double dropped = 0.0;
    const std::size_t old_size = boundary.size();
    for (std::size_t old_idx = 0; old_idx < old_size; ++old_idx) {
      const cplx amp = boundary[old_idx];
      if (amp == cplx(0, 0)) continue;
      const int c = static_cast<int>(bit(old_idx, j));
      const int d = static_cast<int>(bit(old_idx, N));
      const std::size_t base =
          old_idx & ~((std::size_t{1} << j) | (std::size_t{1} << N));
      const int i_lo = select ? pinned_i_flat : 0;
      const int i_hi = select ? pinned_i_flat + 1 : t.physical_dim();
      for (int i_flat = i_lo; i_flat < i_hi; ++i_flat) {
        const int i1 = (i_flat >> (p - 1)) & 1;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const cplx v = t.at(i_flat, a, b, c, d);
            if (v == cplx(0, 0)) continue;
            const cplx term = amp * v;
            if (!real_exit && !select && i1 == 1) {
              // A bond that predates the protocol exits here; the in-fill
              // tensor is the identity on that leg and the bond is |0>, so
              // nothing may arrive on i1 = 1.
              dropped += std::norm(term);
              continue;
            }
            std::size_t idx = base | (static_cast<std::size_t>(a) << j) |
                              (static_cast<std::size_t>(b) << N);
            if (!select) {
              int pos = n_bits;
              if (real_exit) {
                idx |= static_cast<std::size_t>(i1) << pos++;
              }
              for (std::size_t f = 0; f < fresh_out.size(); ++f) {
                const int ibit = (i_flat >> (p - 2 - static_cast<int>(f))) & 1;
                idx |= static_cast<std::size_t>(ibit) << pos++;
              }
            }
            next[idx] += term;
          }
        }
      }
    }
    if (dropped > 1e-18) {
      throw std::logic_error(
          "contraction dropped amplitude on a pre-protocol bond");
    }

    boundary = std::move(next);
    if (!select) {
      if (real_exit) {
        id_of_bit.push_back(program.returning_tape(k));
      }
      for (int s : fresh_out) id_of_bit.push_back(program.fresh_tape(k, s));
    }
    n_bits = new_bits;
    id_of_bit[static_cast<std::size_t>(j)] =
        program.fresh_tape(k, program.queue_slot);
  }

  // Removes a bit that is guaranteed |0> (a bond no photon ever used).
  void squeeze_zero_bit(int pos) {
    const std::size_t stride = std::size_t{1} << pos;
    std::vector<cplx> next(boundary.size() / 2);
    for (std::size_t idx = 0; idx < next.size(); ++idx) {
      const std::size_t src = ((idx & ~(stride - 1)) << 1) | (idx & (stride - 1));
      next[idx] = boundary[src];
      if (std::norm(boundary[src | stride]) > 1e-18) {
        throw std::logic_error("unused bond is not in |0>");
      }
    }
    boundary = std::move(next);
    id_of_bit.erase(id_of_bit.begin() + pos);
    --n_bits;
  }
};

const StepTensor& tensor_for_step(const ProtocolProgram& program, int k,
                                  std::optional<StepTensor>& fill_cache,
                                  std::optional<StepTensor>& bulk_cache,
                                  std::optional<StepTensor>& step_cache) {
  if (program.steps.has_value()) {
    step_cache = extract_step_tensor(program, k);
    return *step_cache;
  }
  if (k <= program.N) {
    if (!fill_cache.has_value()) fill_cache = extract_step_tensor(program, k);
    return *fill_cache;
  }
  if (!bulk_cache.has_value()) bulk_cache = extract_step_tensor(program, k);
  return *bulk_cache;
}

void check_contract_cap(const ProtocolProgram& program, bool full_state) {
  const int cap = env_cap("TAPESTRY_MAX_CONTRACT_QUBITS", 22);
  const int needed =
      full_state ? program.tape_qubits() + program.N + 1 : program.N + 1;
  if (needed > cap) {
    throw CapExceededError("contraction needs " + std::to_string(needed) +
                           " boundary-equivalent qubits, cap is " +
                           std::to_string(cap) +
                           " (TAPESTRY_MAX_CONTRACT_QUBITS)");
  }
}

}  // namespace

PureState contract_protocol_network(const ProtocolProgram& program) {
  program.validate();
  check_contract_cap(program, true);

  Sweep sweep(program);
  std::optional<StepTensor> fill, bulk, per_step;
  const std::vector<int> no_selection;
  for (int k = 1; k <= program.K; ++k) {
    sweep.advance(k, tensor_for_step(program, k, fill, bulk, per_step),
                  no_selection);
  }

  // Bonds never consumed by a step (K < N) are still pre-protocol |0>.
  for (int pos = sweep.n_bits - 1; pos >= 0; --pos) {
    if (sweep.id_of_bit[static_cast<std::size_t>(pos)] < 1) {
      sweep.squeeze_zero_bit(pos);
    }
  }

  const int n = program.total_qubits();
  if (sweep.n_bits != n) {
    throw std::logic_error("contraction ended with the wrong qubit count");
  }
  PureState state(n, std::move(sweep.boundary));
  std::vector<int> new_position(static_cast<std::size_t>(n));
  for (int bit_pos = 0; bit_pos < n; ++bit_pos) {
    const int id = sweep.id_of_bit[static_cast<std::size_t>(bit_pos)];
    new_position[static_cast<std::size_t>(bit_pos)] =
        id == sweep.emitter_id() ? n - 1 : id - 1;
  }
  state.permute_qubits(new_position);
  return state;
}

cplx contract_amplitude(const ProtocolProgram& program,
                        const std::vector<int>& bits) {
  program.validate();
  check_contract_cap(program, false);
  if (static_cast<int>(bits.size()) != program.total_qubits()) {
    throw ValidationError("outcome must supply one bit per qubit (" +
                          std::to_string(program.total_qubits()) + ")");
  }
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValidationError("outcome bits must be 0 or 1");
  }

  Sweep sweep(program);
  std::optional<StepTensor> fill, bulk, per_step;
  for (int k = 1; k <= program.K; ++k) {
    sweep.advance(k, tensor_for_step(program, k, fill, bulk, per_step), bits);
  }

  // Select the requested component of every leg still on the boundary:
  // queued photons, pre-protocol |0> bonds, and the emitter.
  std::size_t idx = 0;
  for (int pos = 0; pos < sweep.n_bits; ++pos) {
    const int id = sweep.id_of_bit[static_cast<std::size_t>(pos)];
    int want = 0;
    if (id == sweep.emitter_id()) {
      want = bits[static_cast<std::size_t>(program.tape_qubits())];
    } else if (id >= 1) {
      want = bits[static_cast<std::size_t>(id - 1)];
    }
    idx |= static_cast<std::size_t>(want) << pos;
  }
  return sweep.boundary[idx];
}

PureState contract_torus(const StepTensor& tensor, int Tx, int Ty) {
  if (tensor.p != 4) {
    throw ValidationError("torus contraction needs a 4-photon site tensor");
  }
  if (Tx < 1 || Ty < 1) throw ValidationError("torus extents must be >= 1");
  const int sites = Tx * Ty;
  const int n = 4 * sites;
  if (n > 20) {
    throw CapExceededError("torus contraction needs " + std::to_string(n) +
                           " qubits, cap is 20");
  }

  // Bond variables: vert[s] sits between site (x,y) and (x,y+1) (the a/c
  // pair), horiz[s] between (x,y) and (x+1,y) (the b/d pair).
  const int n_bonds = 2 * sites;
  std::vector<cplx> amps(std::size_t{1} << n, cplx(0, 0));

  auto site_of = [Tx](int x, int y) { return y * Tx + x; };

  for (std::size_t config = 0; config < (std::size_t{1} << n_bonds); ++config) {
    // For fixed bonds each site reduces to a 16-vector over its physical
    // nibble; sparse expansion over sites touches only nonzero entries.
    std::vector<std::vector<std::pair<int, cplx>>> nz(
        static_cast<std::size_t>(sites));
    bool dead = false;
    for (int y = 0; y < Ty && !dead; ++y) {
      for (int x = 0; x < Tx && !dead; ++x) {
        const int s = site_of(x, y);
        const int a = static_cast<int>(bit(config, site_of(x, y)));
        const int b = static_cast<int>(bit(config, sites + site_of(x, y)));
        const int c = static_cast<int>(bit(config, site_of(x, (y - 1 + Ty) % Ty)));
        const int d = static_cast<int>(bit(config, sites + site_of((x - 1 + Tx) % Tx, y)));
        auto& list = nz[static_cast<std::size_t>(s)];
        for (int i_flat = 0; i_flat < 16; ++i_flat) {
          const cplx v = tensor.at(i_flat, a, b, c, d);
          if (v != cplx(0, 0)) {
            // Leg i_j of this site is qubit 4s + j - 1; i1 is i_flat's top bit.
            const int nib = ((i_flat >> 3) & 1) | (((i_flat >> 2) & 1) << 1) |
                            (((i_flat >> 1) & 1) << 2) | ((i_flat & 1) << 3);
            list.emplace_back(nib, v);
          }
        }
        dead = list.empty();
      }
    }
    if (dead) continue;

    // Depth-first outer product over sites.
    std::vector<std::size_t> choice(static_cast<std::size_t>(sites), 0);
    std::vector<cplx> partial(static_cast<std::size_t>(sites) + 1);
    partial[0] = cplx(1, 0);
    std::vector<std::size_t> z_prefix(static_cast<std::size_t>(sites) + 1, 0);
    int depth = 0;
    while (depth >= 0) {
      if (depth == sites) {
        amps[z_prefix[static_cast<std::size_t>(sites)]] +=
            partial[static_cast<std::size_t>(sites)];
        --depth;
        continue;
      }
      auto& list = nz[static_cast<std::size_t>(depth)];
      std::size_t& pick = choice[static_cast<std::size_t>(depth)];
      if (pick >= list.size()) {
        pick = 0;
        --depth;
        continue;
      }
      const auto& [nib, v] = list[pick++];
      partial[static_cast<std::size_t>(depth) + 1] =
          partial[static_cast<std::size_t>(depth)] * v;
      z_prefix[static_cast<std::size_t>(depth) + 1] =
          z_prefix[static_cast<std::size_t>(depth)] |
          (static_cast<std::size_t>(nib) << (4 * depth));
      ++depth;
    }
  }

  PureState state(n, std::move(amps));
  const double norm2 = state.norm_squared();
  if (norm2 < 1e-300) {
    throw ValidationError("torus contraction produced the zero state");
  }
  state.renormalize();
  return state;
}

ToricReport verify_toric_stabilizers(const PureState& state, int Tx, int Ty,
                                     ToricConvention convention, double tol) {
  const int sites = Tx * Ty;
  const int n = 4 * sites;
  if (state.n() != n) {
    throw ValidationError("state size does not match the torus extents");
  }

  auto qubit = [Tx](int leg, int x, int y) {
    return 4 * (y * Tx + x) + (leg - 1);
  };
  auto wrap_x = [Tx](int x) { return (x % Tx + Tx) % Tx; };
  auto wrap_y = [Ty](int y) { return (y % Ty + Ty) % Ty; };

  ToricReport report;
  report.convention = convention;
  report.pass = true;
  report.worst = 0.0;

  auto add_check = [&](const std::string& label, bool star,
                       const std::vector<int>& qubits) {
    PauliString op(n);
    const bool use_x = star == (convention == ToricConvention::kXStars);
    for (int q : qubits) {
      // XOR so that a doubly covered qubit (wrap-degenerate tori) cancels.
      if (use_x) {
        op.set_x(q, !op.x_bit(q));
      } else {
        op.set_z(q, !op.z_bit(q));
      }
    }
    ToricCheck check;
    check.label = label;
    check.op = op.to_string();
    check.expectation = op.expectation(state).real();
    check.pass = std::abs(check.expectation - 1.0) <= tol;
    report.worst = std::max(report.worst, std::abs(check.expectation - 1.0));
    report.pass = report.pass && check.pass;
    report.checks.push_back(std::move(check));
  };

  for (int y = 0; y < Ty; ++y) {
    for (int x = 0; x < Tx; ++x) {
      const std::string at = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
      add_check("star-v" + at, true,
                {qubit(1, x, y), qubit(2, x, y), qubit(3, x, wrap_y(y + 1)),
                 qubit(4, x, wrap_y(y + 1))});
      add_check("star-h" + at, true,
                {qubit(1, x, y), qubit(4, x, y), qubit(2, wrap_x(x + 1), y),
                 qubit(3, wrap_x(x + 1), y)});
      add_check("plaquette-cell" + at, false,
                {qubit(1, x, y), qubit(2, x, y), qubit(3, x, y), qubit(4, x, y)});
      add_check("plaquette-dual" + at, false,
                {qubit(1, x, y), qubit(2, wrap_x(x + 1), y),
                 qubit(3, wrap_x(x + 1), wrap_y(y + 1)),
                 qubit(4, x, wrap_y(y + 1))});
    }
  }
  return report;
}

}  // namespace tapestry
