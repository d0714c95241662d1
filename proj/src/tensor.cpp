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
#include "tapestry/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tapestry/statevector.hpp"

namespace tapestry {
namespace {

// 2x2 complex matrices as row-major arrays m[r*2 + c].
using Mat2 = std::array<cplx, 4>;

constexpr Mat2 kIdentity2 = {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out[r * 2 + c] = a[r * 2 + 0] * b[0 * 2 + c] + a[r * 2 + 1] * b[1 * 2 + c];
    }
  }
  return out;
}

Mat2 mat_adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// Unitary factor of the polar decomposition of the adjoint problem: returns
// the U maximizing Re tr(U C), namely V W^dagger for the SVD C = W S V^dagger.
Mat2 trace_maximizer(const Mat2& c_mat) {
  // Eigen-decompose A = C^dagger C (hermitian, psd).
  const Mat2 a = mat_mul(mat_adjoint(c_mat), c_mat);
  const double a00 = a[0].real();
  const double a11 = a[3].real();
  const cplx a01 = a[1];
  const double mean = 0.5 * (a00 + a11);
  const double disc =
      std::sqrt(std::max(0.0, 0.25 * (a00 - a11) * (a00 - a11) +
                                  std::norm(a01)));
  const double lam1 = mean + disc;
  const double lam2 = std::max(0.0, mean - disc);

  Mat2 v = kIdentity2;
  if (std::abs(a01) > 1e-300) {
    cplx v1a = a01;
    cplx v1b = cplx(lam1 - a00, 0.0);
    const double nrm = std::sqrt(std::norm(v1a) + std::norm(v1b));
    v1a /= nrm;
    v1b /= nrm;
    // Columns: (v1a, v1b) and its orthogonal complement.
    v = {v1a, -std::conj(v1b), v1b, std::conj(v1a)};
  } else if (a00 < a11) {
    v = {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
  }

  const double s1 = std::sqrt(lam1);
  const double s2 = std::sqrt(lam2);
  // W columns are C v_i / s_i, completed orthonormally when s_i vanishes.
  std::array<cplx, 2> w1{}, w2{};
  auto col = [&](int i) {
    return std::array<cplx, 2>{v[0 * 2 + i], v[1 * 2 + i]};
  };
  auto apply_c = [&](const std::array<cplx, 2>& x) {
    return std::array<cplx, 2>{c_mat[0] * x[0] + c_mat[1] * x[1],
                               c_mat[2] * x[0] + c_mat[3] * x[1]};
  };
  if (s1 > 1e-150) {
    const auto cx = apply_c(col(0));
    w1 = {cx[0] / s1, cx[1] / s1};
  } else {
    w1 = {cplx(1, 0), cplx(0, 0)};
  }
  if (s2 > 1e-12 * std::max(1.0, s1)) {
    const auto cx = apply_c(col(1));
    w2 = {cx[0] / s2, cx[1] / s2};
  } else {
    w2 = {-std::conj(w1[1]), std::conj(w1[0])};
  }
  const Mat2 w = {w1[0], w2[0], w1[1], w2[1]};
  return mat_mul(v, mat_adjoint(w));
}

// Applies a 2x2 matrix to one binary leg of a dense tensor; `pos` is the
// leg's bit position in the flat index.
void apply_leg(std::vector<cplx>& vec, int pos, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << pos;
  for (std::size_t base = 0; base < vec.size(); base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const cplx x0 = vec[i0];
      const cplx x1 = vec[i1];
      vec[i0] = u[0] * x0 + u[1] * x1;
      vec[i1] = u[2] * x0 + u[3] * x1;
    }
  }
}

double norm_sq(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return s;
}

}  // namespace

StepTensor StepTensor::zeros(int p) {
  StepTensor t;
  t.p = p;
  t.data.assign(std::size_t{1} << (p + 4), cplx(0, 0));
  return t;
}

double StepTensor::frobenius_norm() const { return std::sqrt(norm_sq(data)); }

StepTensor extract_step_tensor(const ProtocolProgram& program, int k) {
  program.validate();
  if (k < 1 || k > program.K) {
    throw ValidationError("step index " + std::to_string(k) +
                          " out of range 1.." + std::to_string(program.K));
  }
  const int p = program.p;
  const int n_win = p + 2;  // bond in/out at 0, fresh slots 1..p, emitter p+1
  const int emitter_win = p + 1;

  // Window-local resolution of the step's targets.
  auto resolve_window = [&](const QubitRef& ref) -> std::optional<int> {
    switch (ref.kind) {
      case QubitRef::Kind::Emitter:
        return emitter_win;
      case QubitRef::Kind::Fresh:
        return ref.index;
      case QubitRef::Kind::Returning:
        if (program.returning_tape(k) < 1) return std::nullopt;
        return 0;
      case QubitRef::Kind::Tape: {
        if (ref.index == program.returning_tape(k)) return 0;
        if (ref.index >= program.fresh_tape(k, 1) &&
            ref.index <= program.fresh_tape(k, p)) {
          return ref.index - program.fresh_tape(k, 1) + 1;
        }
        throw ValidationError("tape index " + std::to_string(ref.index) +
                              " lies outside step " + std::to_string(k));
      }
    }
    throw ValidationError("unhandled qubit reference kind");
  };

  StepTensor t = StepTensor::zeros(p);
  std::vector<int> non_queue;
  for (int s = 1; s <= p; ++s) {
    if (s != program.queue_slot) non_queue.push_back(s);
  }

  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      std::vector<cplx> amps(std::size_t{1} << n_win, cplx(0, 0));
      amps[static_cast<std::size_t>(c) | (static_cast<std::size_t>(d) << emitter_win)] =
          cplx(1, 0);
      PureState psi(n_win, std::move(amps));
      for (int s = 1; s <= p; ++s) {
        if (program.fresh_init_of(s) == QubitInit::kPlus) {
          psi.apply_gate(GateOp::h(QubitRef::emitter()), {s});
        }
      }
      for (const GateOp& op : program.step_gates(k)) {
        if (op.kind == GateKind::MeasureX) {
          throw ValidationError(
              "step " + std::to_string(k) +
              ": measurement gates have no step-tensor representation");
        }
        std::vector<int> qs;
        bool skip = false;
        for (const QubitRef& ref : op.targets) {
          const std::optional<int> q = resolve_window(ref);
          if (!q.has_value()) {
            skip = true;
            break;
          }
          qs.push_back(*q);
        }
        if (skip) continue;
        psi.apply_gate(op, qs);
      }
      for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        const cplx amp = psi.amplitude(idx);
        const int i1 = static_cast<int>(bit(idx, 0));
        const int a = static_cast<int>(bit(idx, program.queue_slot));
        const int b = static_cast<int>(bit(idx, emitter_win));
        int i_flat = i1;
        for (int s : non_queue) {
          i_flat = (i_flat << 1) | static_cast<int>(bit(idx, s));
        }
        t.at(i_flat, a, b, c, d) += amp;
      }
    }
  }
  return t;
}

IsometryReport check_isometry(const StepTensor& tensor, double tol) {
  IsometryReport report;
  report.gram.assign(16, cplx(0, 0));
  const int pd = tensor.physical_dim();
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      for (int c2 = 0; c2 < 2; ++c2) {
        for (int d2 = 0; d2 < 2; ++d2) {
          cplx g(0, 0);
          for (int i = 0; i < pd; ++i) {
            for (int a = 0; a < 2; ++a) {
              for (int b = 0; b < 2; ++b) {
                g += tensor.at(i, a, b, c, d) *
                     std::conj(tensor.at(i, a, b, c2, d2));
              }
            }
          }
          report.gram[static_cast<std::size_t>((c * 2 + d) * 4 + c2 * 2 + d2)] = g;
        }
      }
    }
  }
  report.max_deviation = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) {
      const cplx expect = r == s ? cplx(1, 0) : cplx(0, 0);
      report.max_deviation = std::max(
          report.max_deviation,
          std::abs(report.gram[static_cast<std::size_t>(r * 4 + s)] - expect));
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

StepTensor toric_tensor(double norm) {
  StepTensor t = StepTensor::zeros(4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const int i1 = a ^ b;
          const int i2 = d ^ a;
          const int i3 = c ^ d;
          const int i4 = b ^ c;
          const int i_flat = (((i1 << 1) | i2) << 2) | (i3 << 1) | i4;
          t.at(i_flat, a, b, c, d) = cplx(norm, 0);
        }
      }
    }
  }
  return t;
}

LuCompareResult compare_up_to_local_unitaries(const StepTensor& candidate,
                                              const StepTensor& reference,
                                              int restarts,
                                              std::uint64_t seed) {
  if (candidate.p != reference.p) {
    throw ValidationError("tensors have different physical leg counts");
  }
  const int n_legs = candidate.p + 4;
  const double nc2 = norm_sq(candidate.data);
  const double nr2 = norm_sq(reference.data);
  const double scale = std::sqrt(std::max(nc2 * nr2, 1e-300));

  LuCompareResult result;
  {
    cplx direct(0, 0);
    for (std::size_t i = 0; i < candidate.data.size(); ++i) {
      direct += std::conj(reference.data[i]) * candidate.data[i];
    }
    result.direct_distance =
        std::sqrt(std::max(0.0, nc2 + nr2 - 2.0 * direct.real()));
  }

  Rng rng(seed);
  double best_overlap = -1e300;
  for (int attempt = 0; attempt < std::max(1, restarts); ++attempt) {
    std::vector<Mat2> us(static_cast<std::size_t>(n_legs), kIdentity2);
    if (attempt > 0) {
      for (Mat2& u : us) {
        const std::vector<cplx> h = haar_unitary(2, rng);
        std::copy(h.begin(), h.end(), u.begin());
      }
    }
    double overlap = -1e300;
    bool converged = false;
    int iter = 0;
    for (; iter < 500 && !converged; ++iter) {
      double sweep_overlap = overlap;
      for (int leg = 0; leg < n_legs; ++leg) {
        const int pos = n_legs - 1 - leg;
        // Transform every leg except `leg`, then contract against the
        // reference to get the 2x2 environment C[x][y].
        std::vector<cplx> work = candidate.data;
        for (int m = 0; m < n_legs; ++m) {
          if (m != leg) apply_leg(work, n_legs - 1 - m, us[static_cast<std::size_t>(m)]);
        }
        Mat2 env{};
        const std::size_t stride = std::size_t{1} << pos;
        for (std::size_t idx = 0; idx < work.size(); ++idx) {
          const int x = static_cast<int>(bit(idx, pos));
          const std::size_t mate = idx ^ stride;
          // y runs over the reference leg value.
          env[x * 2 + x] += work[idx] * std::conj(reference.data[idx]);
          env[x * 2 + (1 - x)] += work[idx] * std::conj(reference.data[mate]);
        }
        us[static_cast<std::size_t>(leg)] = trace_maximizer(env);
        // Re tr(U env) after the update equals the sum of env's singular
        // values; track it via direct evaluation for the convergence test.
        const Mat2& u = us[static_cast<std::size_t>(leg)];
        cplx s(0, 0);
        for (int y = 0; y < 2; ++y) {
          for (int x = 0; x < 2; ++x) s += u[y * 2 + x] * env[x * 2 + y];
        }
        sweep_overlap = s.real();
      }
      if (sweep_overlap - overlap <= 1e-13 * scale && iter > 0) {
        converged = true;
      }
      overlap = sweep_overlap;
    }
    result.iterations += iter;
    if (overlap > best_overlap) {
      best_overlap = overlap;
      result.converged = converged;
    }
  }
  result.distance =
      std::sqrt(std::max(0.0, nc2 + nr2 - 2.0 * best_overlap));
  return result;
}

}  // namespace tapestry
