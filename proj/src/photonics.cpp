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
#include "tapestry/photonics.hpp"

#include <cmath>
#include <limits>

#include "tapestry/special_functions.hpp"

namespace tapestry {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

WavepacketModel WavepacketModel::lorentzian(double gamma_L) {
  if (!(gamma_L > 0.0)) throw ValidationError("gamma_L must be > 0");
  WavepacketModel w;
  w.shape = Shape::kLorentzian;
  w.gamma_L = gamma_L;
  return w;
}

WavepacketModel WavepacketModel::gaussian(double B, double t0) {
  if (!(B > 0.0)) throw ValidationError("bandwidth B must be > 0");
  WavepacketModel w;
  w.shape = Shape::kGaussian;
  w.B = B;
  w.t0 = t0;
  return w;
}

double WavepacketModel::f(double t) const {
  if (shape == Shape::kLorentzian) {
    if (t < 0.0) return 0.0;
    return std::sqrt(gamma_L) * std::exp(-0.5 * gamma_L * t);
  }
  const double s = B * (t - t0);
  return std::sqrt(B / std::sqrt(kPi)) * std::exp(-0.5 * s * s);
}

double WavepacketModel::decay_schedule(double t) const {
  if (shape == Shape::kLorentzian) {
    return t < 0.0 ? 0.0 : gamma_L;
  }
  // 2B exp(-s^2) / (sqrt(pi) erfc(s)) written through erfcx for stability
  // deep in both tails.
  const double s = B * (t - t0);
  return 2.0 * B / (std::sqrt(kPi) * erfcx(s));
}

double WavepacketModel::spectral_density(double omega) const {
  if (shape == Shape::kLorentzian) {
    return gamma_L / (omega * omega + 0.25 * gamma_L * gamma_L);
  }
  return (2.0 * std::sqrt(kPi) / B) * std::exp(-omega * omega / (B * B));
}

double WavepacketModel::support_begin() const {
  return shape == Shape::kLorentzian ? 0.0 : t0 - 8.0 / B;
}

double WavepacketModel::support_end() const {
  return shape == Shape::kLorentzian ? 48.0 / gamma_L : t0 + 8.0 / B;
}

double WavepacketModel::bandwidth() const {
  return shape == Shape::kLorentzian ? gamma_L : B;
}

cplx scattering_phase(double omega, double gamma_R) {
  if (!(gamma_R > 0.0)) throw ValidationError("gamma_R must be > 0");
  const cplx half(0.0, 0.5 * gamma_R);
  return (omega - half) / (omega + half);
}

QuadratureResult scattered_overlap(const WavepacketModel& w, double gamma_R) {
  if (!(gamma_R > 0.0)) throw ValidationError("gamma_R must be > 0");
  // overlap = 1 + (1/2pi) int (t(omega) - 1) |f^hat|^2, with
  // t(omega) - 1 = -i gamma_R / (omega + i gamma_R / 2); subtracting the
  // identity keeps the integrand absolutely integrable.
  auto integrand = [&w, gamma_R](double omega) -> cplx {
    const cplx tm1 =
        cplx(0.0, -gamma_R) / cplx(omega, 0.5 * gamma_R);
    return tm1 * (w.spectral_density(omega) / (2.0 * kPi));
  };

  const double bw = w.bandwidth();
  const double window = 32.0 * std::max(gamma_R, bw);
  std::vector<double> breakpoints;
  for (double scale : {bw, 4.0 * bw, 8.0 * bw, 0.5 * gamma_R, 2.0 * gamma_R,
                       8.0 * gamma_R}) {
    breakpoints.push_back(scale);
    breakpoints.push_back(-scale);
  }
  breakpoints.push_back(0.0);

  QuadratureResult result = integrate_with_breakpoints(
      integrand, -window, window, breakpoints, 0.5e-10);
  // The Lorentzian tail decays only like 1/omega^3; fold in both tails
  // exactly rather than relying on the window.
  result += integrate_to_infinity(integrand, window, 0.25e-10);
  auto reflected = [&integrand](double omega) { return integrand(-omega); };
  result += integrate_to_infinity(reflected, window, 0.25e-10);

  result.value += 1.0;
  return result;
}

double scattered_overlap_closed(WavepacketModel::Shape shape, double x) {
  if (!(x > 0.0)) throw ValidationError("bandwidth ratio x must be > 0");
  if (shape == WavepacketModel::Shape::kLorentzian) {
    return -(1.0 - x) / (1.0 + x);
  }
  return 1.0 - std::sqrt(kPi) * erfcx(1.0 / (2.0 * x)) / x;
}

double phase_gate_fidelity_from_overlap(cplx overlap) {
  const cplx m = -overlap;
  return (4.0 + std::norm(3.0 + m)) / 20.0;
}

double phase_gate_fidelity(WavepacketModel::Shape shape, double x) {
  return phase_gate_fidelity_from_overlap(scattered_overlap_closed(shape, x));
}

double cnot_completion_error_closed(const WavepacketModel& w, double T) {
  if (!(T > 0.0)) throw ValidationError("period T must be > 0");
  if (w.shape == WavepacketModel::Shape::kLorentzian) {
    return std::exp(-0.5 * w.gamma_L * T);
  }
  // erf through erfcx to keep the expression finite for large BT.
  const double y = 0.25 * w.B * T;
  const double erf_y = 1.0 - std::exp(-y * y) * erfcx(y);
  return 1.0 - std::sqrt(2.0) * erf_y / std::sqrt(1.0 + erf_y);
}

QuadratureResult cnot_completion_error(const WavepacketModel& w, double T) {
  if (!(T > 0.0)) throw ValidationError("period T must be > 0");
  const double start = w.support_begin();
  long inner_evals = 0;

  // Emission density gamma(t) exp(-int gamma), built from the schedule
  // alone; the inner accumulation is itself quadrature, so this path never
  // touches the closed forms or erf.
  auto density = [&w, start, &inner_evals](double t) -> cplx {
    QuadratureResult acc =
        integrate( [&w](double s) { return cplx(w.decay_schedule(s), 0.0); },
                  start, t, 1e-12, 200);
    inner_evals += acc.evaluations;
    return cplx(w.decay_schedule(t) * std::exp(-acc.value.real()), 0.0);
  };

  QuadratureResult result;
  if (w.shape == WavepacketModel::Shape::kLorentzian) {
    // Window [0, T/2]; eps = 1 - P(emitted inside window).
    QuadratureResult emitted = integrate(density, 0.0, 0.5 * T, 1e-10);
    result = emitted;
    result.value = 1.0 - emitted.value;
  } else {
    // Window of length T/2 centered on the packet; eps conditions on the
    // photon having been emitted by the window end.
    const double lo = w.t0 - 0.25 * T;
    const double hi = w.t0 + 0.25 * T;
    QuadratureResult emitted = integrate(density, std::max(lo, start), hi, 1e-10);
    QuadratureResult total = integrate(density, start, hi, 1e-10);
    result = emitted;
    result += total;
    result.value =
        1.0 - emitted.value.real() / std::sqrt(total.value.real());
  }
  result.evaluations += inner_evals;
  return result;
}

double cnot_fidelity(double eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw ValidationError("completion error must lie in [0, 1]");
  }
  return 1.0 - (2.0 / 3.0) * eps + (1.0 / 6.0) * eps * eps;
}

double loss_fidelity_model(int N, int M, double eta_L, double eta_R) {
  if (N < 1 || M < 1) throw ValidationError("N and M must be >= 1");
  if (!(eta_L > 1.0)) throw ValidationError("eta_L must be > 1");
  if (!(eta_R > 1.0)) throw ValidationError("eta_R must be > 1");
  const double p_emit =
      std::isinf(eta_L) ? 1.0 : eta_L / (1.0 + eta_L);
  const double ratio =
      std::isinf(eta_R) ? 1.0 : (eta_R - 1.0) / (eta_R + 1.0);
  const double p_scat = ratio * ratio;
  return std::pow(p_emit * p_scat, 0.5 * N * M);
}

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ValidationError("linear fit needs >= 2 matching points");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) {
    throw ValidationError("linear fit is degenerate (constant x)");
  }
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r2 = ss_tot < 1e-300 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace tapestry
