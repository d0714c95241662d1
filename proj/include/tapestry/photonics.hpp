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
#ifndef TAPESTRY_PHOTONICS_HPP_
#define TAPESTRY_PHOTONICS_HPP_

#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/quadrature.hpp"

namespace tapestry {

// Single-photon wavepacket emitted by the source emitter.  Lorentzian:
// f(t) = sqrt(gamma_L) exp(-gamma_L t / 2) for t >= 0.  Gaussian:
// f(t) = (B/sqrt(pi))^(1/2) exp(-B^2 (t-t0)^2 / 2), produced by the decay
// schedule gamma(t) = 2B / (sqrt(pi) erfcx(B (t-t0))).
struct WavepacketModel {
  enum class Shape { kLorentzian, kGaussian };

  Shape shape = Shape::kLorentzian;
  double gamma_L = 1.0;  // Lorentzian decay rate
  double B = 1.0;        // Gaussian bandwidth
  double t0 = 0.0;       // Gaussian center

  static WavepacketModel lorentzian(double gamma_L);
  static WavepacketModel gaussian(double B, double t0 = 0.0);

  double f(double t) const;               // amplitude (real for both shapes)
  double decay_schedule(double t) const;  // gamma_L(t)
  // |f^hat(omega)|^2 for f^hat(omega) = int f(t) e^{i omega t} dt;
  // Lorentzian: gamma_L / (omega^2 + gamma_L^2/4); Gaussian:
  // (2 sqrt(pi)/B) exp(-omega^2/B^2).
  double spectral_density(double omega) const;
  double support_begin() const;  // window outside which |f|^2 < 1e-20
  double support_end() const;
  double bandwidth() const;  // gamma_L or B
};

// Transmission coefficient of a resonant photon passing the emitter:
// t(omega) = (omega - i gamma_R/2) / (omega + i gamma_R/2); |t| = 1, with
// t(0) = -1 (the pi phase the gate exploits).
cplx scattering_phase(double omega, double gamma_R);

// Overlap <f|f~> between the packet and its scattered self, evaluated in
// the frequency domain as 1 + (1/2pi) int (t(omega)-1) |f^hat|^2 d omega.
// The finite window spans 32 max(gamma_R, bandwidth) with exact tail
// integrals beyond it; non-convergence is an error carrying the residual.
QuadratureResult scattered_overlap(const WavepacketModel& w, double gamma_R);

// Closed forms, x = bandwidth/gamma_R: Lorentzian -(1-x)/(1+x); Gaussian
// 1 - sqrt(pi) erfcx(1/(2x)) / x.
double scattered_overlap_closed(WavepacketModel::Shape shape, double x);

// Average fidelity of the emitter-photon phase gate: with m = -overlap,
// F_Z = (4 + |3 + m|^2) / 20.  Reproduces the rational Lorentzian form
// (2x(x+3)+5)/(5(x+1)^2) and the small-x Gaussian expansion 1 - 8/5 x^2.
double phase_gate_fidelity(WavepacketModel::Shape shape, double x);
double phase_gate_fidelity_from_overlap(cplx overlap);

// Probability that the photon emission is not completed inside its
// half-period gate window.  Unshaped (Lorentzian, window [0, T/2]):
// e^{-gamma_L T/2}.  Shaped (Gaussian, window centered on the packet):
// 1 - sqrt(2) erf(BT/4) / sqrt(1 + erf(BT/4)); the shaped form conditions
// on emission by the window end (the 1/sqrt(W) factor), the unshaped one
// does not.
double cnot_completion_error_closed(const WavepacketModel& w, double T);
// Same quantity from the defining integrals over the decay schedule
// (nested quadrature; independent of the closed forms and of erf).
QuadratureResult cnot_completion_error(const WavepacketModel& w, double T);

// F_X = 1 - (2/3) eps + (1/6) eps^2.
double cnot_fidelity(double eps);

// Closed-form fidelity model for the lossy cluster run: per photon one
// emission branching p_emit = eta_L/(1+eta_L) and one scattering pass
// p_scat = ((eta_R-1)/(eta_R+1))^2, amplitude-counted:
// F = (p_emit p_scat)^(N M / 2).  Infinite cooperativities are allowed.
double loss_fidelity_model(int N, int M, double eta_L, double eta_R);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

}  // namespace tapestry

#endif  // TAPESTRY_PHOTONICS_HPP_
