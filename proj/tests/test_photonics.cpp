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
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "doctest.h"
#include "tapestry/common.hpp"
#include "tapestry/photonics.hpp"
#include "tapestry/quadrature.hpp"

namespace tapestry {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Shape = WavepacketModel::Shape;

// Composite Simpson rule with n panels (n even).  Deliberately primitive so
// the time-domain oracle below shares nothing with the adaptive quadrature
// the library uses internally.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Overlap <f|t f> evaluated entirely in the time domain.  The transmission
// t(omega) = 1 - i gamma_R / (omega + i gamma_R/2) Fourier-transforms to a
// causal exponential kernel, so the scattered packet is
//   f~(t) = f(t) - gamma_R int_{s<=t} exp(-gamma_R (t-s)/2) f(s) ds
// and the overlap is 1 minus a double integral over s <= t.  This never
// touches spectral_density, scattered_overlap, or the closed forms.
double time_domain_overlap(const WavepacketModel& w, double gamma_R) {
  const double a = w.support_begin();
  const double b = w.support_end();
  auto outer = [&](double t) {
    // Contributions older than 80/gamma_R are suppressed below 1e-17.
    const double lo = std::max(a, t - 80.0 / gamma_R);
    if (t <= lo) return 0.0;
    auto inner = [&](double s) {
      return std::exp(-0.5 * gamma_R * (t - s)) * w.f(s);
    };
    return w.f(t) * simpson(inner, lo, t, 1600);
  };
  return 1.0 - gamma_R * simpson(outer, a, b, 2000);
}

}  // namespace

TEST_CASE("wavepacket factories, shapes, and validation") {
  const WavepacketModel lor = WavepacketModel::lorentzian(0.3);
  CHECK(lor.shape == Shape::kLorentzian);
  CHECK(lor.gamma_L == 0.3);
  CHECK(lor.bandwidth() == 0.3);

  const WavepacketModel gauss = WavepacketModel::gaussian(0.25, 3.0);
  CHECK(gauss.shape == Shape::kGaussian);
  CHECK(gauss.B == 0.25);
  CHECK(gauss.t0 == 3.0);
  CHECK(gauss.bandwidth() == 0.25);

  CHECK_THROWS_AS(WavepacketModel::lorentzian(0.0), ValidationError);
  CHECK_THROWS_AS(WavepacketModel::lorentzian(-1.0), ValidationError);
  CHECK_THROWS_AS(WavepacketModel::gaussian(0.0), ValidationError);

  // Exponential packet: sqrt(gamma) e^{-gamma t/2} for t >= 0, zero before.
  CHECK(lor.f(-0.5) == 0.0);
  CHECK(std::abs(lor.f(0.0) - std::sqrt(0.3)) < 1e-15);
  CHECK(std::abs(lor.f(2.0) - std::sqrt(0.3) * std::exp(-0.3)) < 1e-15);
  CHECK(std::abs(lor.decay_schedule(0.7) - 0.3) < 1e-15);

  // Gaussian packet peaks at t0 with amplitude (B/sqrt(pi))^(1/2).
  const double peak = std::sqrt(gauss.B / std::sqrt(kPi));
  CHECK(std::abs(gauss.f(3.0) - peak) < 1e-15);
  CHECK(std::abs(gauss.f(3.8) - peak * std::exp(-0.5 * 0.0625 * 0.64)) <
        1e-15);

  // Support windows really do contain all the probability.  The packets
  // are negligible at the far edge; the exponential additionally starts
  // with a hard jump at t = 0, so only its right edge can be small.
  for (const WavepacketModel& w : {lor, gauss}) {
    CHECK(w.support_begin() < w.support_end());
    CHECK(w.f(w.support_end()) * w.f(w.support_end()) <= 1e-18);
  }
  CHECK(gauss.f(gauss.support_begin()) * gauss.f(gauss.support_begin()) <=
        1e-18);
  CHECK(lor.support_begin() == 0.0);
}

TEST_CASE("wavepacket normalization in time and frequency") {
  for (const WavepacketModel& w :
       {WavepacketModel::lorentzian(0.3), WavepacketModel::lorentzian(2.0),
        WavepacketModel::gaussian(0.25), WavepacketModel::gaussian(1.5, 4.0)}) {
    QuadratureResult norm = integrate(
        [&](double t) { return cplx(w.f(t) * w.f(t), 0.0); },
        w.support_begin(), w.support_end(), 1e-12);
    CHECK(norm.converged);
    CHECK(std::abs(norm.value.real() - 1.0) < 1e-9);
    CHECK(std::abs(norm.value.imag()) == 0.0);

    // Plancherel: (1/2pi) int |f^hat|^2 = 1, with explicit tails.
    const double window = 40.0 * w.bandwidth();
    QuadratureResult spectrum = integrate(
        [&](double om) { return cplx(w.spectral_density(om), 0.0); },
        -window, window, 1e-12);
    spectrum += integrate_to_infinity(
        [&](double om) { return cplx(w.spectral_density(om), 0.0); }, window,
        1e-12);
    spectrum += integrate_to_infinity(
        [&](double om) { return cplx(w.spectral_density(-om), 0.0); }, window,
        1e-12);
    CHECK(std::abs(spectrum.value.real() / (2.0 * kPi) - 1.0) < 1e-8);

    // Even spectrum for a real packet.
    CHECK(std::abs(w.spectral_density(0.77 * w.bandwidth()) -
                   w.spectral_density(-0.77 * w.bandwidth())) < 1e-15);
  }

  // On-resonance spectral peaks in closed form.
  CHECK(std::abs(WavepacketModel::lorentzian(0.4).spectral_density(0.0) -
                 4.0 / 0.4) < 1e-12);
  CHECK(std::abs(WavepacketModel::gaussian(0.5).spectral_density(0.0) -
                 2.0 * std::sqrt(kPi) / 0.5) < 1e-12);
}

TEST_CASE("gaussian decay schedule reproduces the packet") {
  // |f(t)|^2 must equal gamma(t) exp(-int_begin^t gamma) for the emission
  // schedule to actually produce the packet shape.
  const WavepacketModel w = WavepacketModel::gaussian(0.8, 1.5);
  for (double t : {-0.9, 0.0, 1.5, 2.3, 4.0}) {
    QuadratureResult accumulated = integrate(
        [&](double s) { return cplx(w.decay_schedule(s), 0.0); },
        w.support_begin(), t, 1e-13);
    REQUIRE(accumulated.converged);
    const double survival = std::exp(-accumulated.value.real());
    const double density = w.decay_schedule(t) * survival;
    CHECK(std::abs(density - w.f(t) * w.f(t)) < 1e-10);
  }

  // The same identity is immediate for the flat schedule.
  const WavepacketModel lor = WavepacketModel::lorentzian(0.7);
  for (double t : {0.0, 1.0, 3.5}) {
    CHECK(std::abs(lor.f(t) * lor.f(t) - 0.7 * std::exp(-0.7 * t)) < 1e-14);
  }
}

TEST_CASE("gaussian schedule pins the scaled complementary error function") {
  // gamma(t) = 2B / (sqrt(pi) erfcx(B (t - t0))), so with B = 1, t0 = 0 the
  // schedule inverts to erfcx(s) = 2 / (sqrt(pi) gamma(s)).  Reference
  // values were computed independently with 50-digit arithmetic.
  const WavepacketModel w = WavepacketModel::gaussian(1.0, 0.0);
  const struct {
    double s;
    double erfcx;
  } pins[] = {
      {-2.0, 108.94090438997797241},  {-1.0, 5.0089800807622834663},
      {0.0, 1.0},                     {0.5, 0.61569034419292587487},
      {1.0, 0.42758357615580700441},  {2.0, 0.25539567631050574387},
      {10.0, 0.056140992743822585858}, {25.0, 0.022549572432641358944},
      {30.0, 0.018795888861416751497},
  };
  for (const auto& pin : pins) {
    const double implied = 2.0 / (std::sqrt(kPi) * w.decay_schedule(pin.s));
    CHECK(std::abs(implied - pin.erfcx) < 1e-13 * pin.erfcx);
  }
}

TEST_CASE("scattering phase is a pure pi-centered phase") {
  const double g = 2.4;
  CHECK(std::abs(scattering_phase(0.0, g) - cplx(-1.0, 0.0)) < 1e-15);
  // At half a linewidth detuning the phase has rotated to -i.
  CHECK(std::abs(scattering_phase(0.5 * g, g) - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(scattering_phase(-0.5 * g, g) - cplx(0.0, 1.0)) < 1e-15);
  for (double om : {0.03, 0.7, 5.0, -11.0, 400.0}) {
    CHECK(std::abs(std::abs(scattering_phase(om, g)) - 1.0) < 1e-15);
  }
  // Far off resonance the photon passes untouched.
  CHECK(std::abs(scattering_phase(1e9, g) - cplx(1.0, 0.0)) < 1e-8);
  CHECK_THROWS_AS(scattering_phase(1.0, 0.0), ValidationError);
}

TEST_CASE("scattered overlap agrees with a time-domain oracle") {
  // Lorentzian, x = gamma_L/gamma_R = 0.3: closed form -(1-x)/(1+x) = -7/13.
  const double lor =
      time_domain_overlap(WavepacketModel::lorentzian(0.3), 1.0);
  CHECK(std::abs(lor - (-7.0 / 13.0)) < 5e-6);

  // Gaussian, x = B/gamma_R = 0.25; the pinned value is
  // 1 - sqrt(pi) erfcx(2) / 0.25 from the same 50-digit evaluation.
  const double gauss =
      time_domain_overlap(WavepacketModel::gaussian(0.25), 1.0);
  CHECK(std::abs(gauss - (-0.81070819992469831745)) < 5e-6);
}

TEST_CASE("scattered overlap closed forms") {
  // Lorentzian rational form at hand-checked points.
  CHECK(std::abs(scattered_overlap_closed(Shape::kLorentzian, 0.3) -
                 (-7.0 / 13.0)) < 1e-15);
  CHECK(scattered_overlap_closed(Shape::kLorentzian, 1.0) == 0.0);
  CHECK(std::abs(scattered_overlap_closed(Shape::kLorentzian, 3.0) - 0.5) <
        1e-15);
  for (double x : {0.02, 0.17, 0.9, 2.5}) {
    CHECK(std::abs(scattered_overlap_closed(Shape::kLorentzian, x) -
                   (-(1.0 - x) / (1.0 + x))) < 1e-15);
  }

  // Gaussian form against pinned erfcx values: 1 - sqrt(pi) erfcx(1/2x) / x.
  const struct {
    double x;
    double erfcx_half_inv;
  } pins[] = {
      {0.25, 0.25539567631050574387},   // erfcx(2)
      {0.5, 0.42758357615580700441},    // erfcx(1)
      {1.0, 0.61569034419292587487},    // erfcx(1/2)
      {0.05, 0.056140992743822585858},  // erfcx(10)
      {0.02, 0.022549572432641358944},  // erfcx(25)
  };
  for (const auto& pin : pins) {
    const double expected = 1.0 - std::sqrt(kPi) * pin.erfcx_half_inv / pin.x;
    CHECK(std::abs(scattered_overlap_closed(Shape::kGaussian, pin.x) -
                   expected) < 1e-13);
  }
  CHECK(std::abs(scattered_overlap_closed(Shape::kGaussian, 0.25) -
                 (-0.81070819992469831745)) < 1e-14);

  CHECK_THROWS_AS(scattered_overlap_closed(Shape::kLorentzian, 0.0),
                  ValidationError);
  CHECK_THROWS_AS(scattered_overlap_closed(Shape::kGaussian, -0.1),
                  ValidationError);
}

TEST_CASE("frequency-domain overlap quadrature matches the closed forms") {
  for (double x : {0.01, 0.05, 0.1, 0.3, 0.5, 1.0}) {
    for (Shape shape : {Shape::kLorentzian, Shape::kGaussian}) {
      const WavepacketModel w = shape == Shape::kLorentzian
                                    ? WavepacketModel::lorentzian(x)
                                    : WavepacketModel::gaussian(x);
      QuadratureResult overlap = scattered_overlap(w, 1.0);
      CHECK(overlap.converged);
      CHECK(std::abs(overlap.value.imag()) < 1e-8);
      CHECK(std::abs(overlap.value.real() -
                     scattered_overlap_closed(shape, x)) < 1e-6);
    }
  }

  // Only the ratio bandwidth/gamma_R matters.
  QuadratureResult scaled =
      scattered_overlap(WavepacketModel::lorentzian(0.6), 2.0);
  CHECK(std::abs(scaled.value.real() -
                 scattered_overlap_closed(Shape::kLorentzian, 0.3)) < 1e-6);
}

TEST_CASE("phase gate fidelity from the overlap") {
  // F = (4 + |3 + m|^2) / 20 with m = -overlap.
  CHECK(phase_gate_fidelity_from_overlap(cplx(-1.0, 0.0)) == 1.0);
  CHECK(std::abs(phase_gate_fidelity_from_overlap(cplx(1.0, 0.0)) - 0.4) <
        1e-15);
  CHECK(std::abs(phase_gate_fidelity_from_overlap(cplx(0.0, 0.0)) - 0.65) <
        1e-15);
  // Complex overlap keeps the cross term: m = -i gives |3 - i|^2 = 10.
  CHECK(std::abs(phase_gate_fidelity_from_overlap(cplx(0.0, 1.0)) - 0.7) <
        1e-15);
}

TEST_CASE("phase gate fidelity closed forms and expansions") {
  // Lorentzian rational form (2x(x+3)+5) / (5(x+1)^2).
  for (double x : {0.05, 0.3, 1.0, 2.0, 7.5}) {
    const double expected =
        (2.0 * x * (x + 3.0) + 5.0) / (5.0 * (x + 1.0) * (x + 1.0));
    CHECK(std::abs(phase_gate_fidelity(Shape::kLorentzian, x) - expected) <
          1e-13);
  }
  // x = 1 makes the overlap vanish, so F = 13/20 exactly.
  CHECK(std::abs(phase_gate_fidelity(Shape::kLorentzian, 1.0) - 0.65) <
        1e-15);
  CHECK(std::abs(phase_gate_fidelity(Shape::kLorentzian, 0.3) -
                 0.82603550295857988166) < 1e-14);

  // Pinned Gaussian point (50-digit reference).
  CHECK(std::abs(phase_gate_fidelity(Shape::kGaussian, 0.25) -
                 0.92607484924866672608) < 1e-12);

  // Small-x behaviour: slope -4/5 for the Lorentzian.
  const double slope =
      (phase_gate_fidelity(Shape::kLorentzian, 1e-4) - 1.0) / 1e-4;
  CHECK(std::abs(slope - (-0.8)) < 1e-3);

  // Quadratic onset 1 - (8/5) x^2 for the Gaussian.
  const double coeff =
      (1.0 - phase_gate_fidelity(Shape::kGaussian, 0.01)) / 1e-4;
  CHECK(coeff > 1.55);
  CHECK(coeff < 1.65);

  // Shaping wins at every ratio.
  for (double x : {0.05, 0.1, 0.3, 0.5, 1.0}) {
    CHECK(phase_gate_fidelity(Shape::kGaussian, x) >
          phase_gate_fidelity(Shape::kLorentzian, x));
  }
  CHECK_THROWS_AS(phase_gate_fidelity(Shape::kGaussian, 0.0),
                  ValidationError);
}

TEST_CASE("completion error closed forms") {
  // Unshaped emission: plain survival of the exponential decay.
  const WavepacketModel lor = WavepacketModel::lorentzian(1.0);
  CHECK(cnot_completion_error_closed(lor, 10.0) == std::exp(-5.0));
  CHECK(cnot_completion_error_closed(WavepacketModel::lorentzian(0.5), 4.0) ==
        std::exp(-1.0));

  // Shaped emission at BT = 4 (50-digit reference value).
  const WavepacketModel gauss = WavepacketModel::gaussian(1.0);
  CHECK(std::abs(cnot_completion_error_closed(gauss, 4.0) -
                 0.12206777762560942553) < 1e-12);

  // Monotone in the window length for both shapes.
  double prev_l = 1.0, prev_g = 1.0;
  for (double T : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double el = cnot_completion_error_closed(lor, T);
    const double eg = cnot_completion_error_closed(gauss, T);
    CHECK(el < prev_l);
    CHECK(eg < prev_g);
    prev_l = el;
    prev_g = eg;
  }
  CHECK_THROWS_AS(cnot_completion_error_closed(lor, 0.0), ValidationError);
}

TEST_CASE("completion error quadrature matches the closed forms") {
  for (double T : {1.0, 5.0, 10.0}) {
    QuadratureResult eps =
        cnot_completion_error(WavepacketModel::lorentzian(1.0), T);
    CHECK(eps.converged);
    CHECK(std::abs(eps.value.imag()) < 1e-12);
    CHECK(std::abs(eps.value.real() - std::exp(-0.5 * T)) < 1e-6);
  }
  for (double T : {2.0, 4.0, 8.0}) {
    const WavepacketModel w = WavepacketModel::gaussian(1.0);
    QuadratureResult eps = cnot_completion_error(w, T);
    CHECK(eps.converged);
    CHECK(std::abs(eps.value.real() - cnot_completion_error_closed(w, T)) <
          1e-6);
  }
  // Scale invariance: only BT enters the shaped form.
  CHECK(std::abs(
            cnot_completion_error_closed(WavepacketModel::gaussian(0.5), 8.0) -
            0.12206777762560942553) < 1e-12);
}

TEST_CASE("shaped completion error tail behaviour") {
  // At BT = 12 (y = BT/4 = 3) the pinned value and its classic tail
  // estimates: the error lies a factor ~0.714 below e^{-y^2}/(sqrt(pi) y)
  // and within 1e-3 of (3/4) erfc(y).
  const double eps =
      cnot_completion_error_closed(WavepacketModel::gaussian(1.0), 12.0);
  CHECK(std::abs(eps - 1.6567948997975121345e-5) < 1e-12 * eps + 1e-18);

  const double crude = std::exp(-9.0) / (std::sqrt(kPi) * 3.0);
  CHECK(eps / crude > 0.70);
  CHECK(eps / crude < 0.73);

  const double refined = 0.75 * std::erfc(3.0);
  CHECK(eps / refined > 0.999);
  CHECK(eps / refined < 1.001);
}

TEST_CASE("gate fidelity from the completion error") {
  CHECK(cnot_fidelity(0.0) == 1.0);
  CHECK(std::abs(cnot_fidelity(1.0) - 0.5) < 1e-15);
  CHECK(std::abs(cnot_fidelity(0.5) - 17.0 / 24.0) < 1e-15);

  // Chained pin: the BT = 4 error maps to this fidelity.
  CHECK(std::abs(cnot_fidelity(0.12206777762560942553) -
                 0.92110490530533625516) < 1e-12);

  CHECK_THROWS_AS(cnot_fidelity(-0.01), ValidationError);
  CHECK_THROWS_AS(cnot_fidelity(1.01), ValidationError);
}

TEST_CASE("loss fidelity model") {
  // Hand-checked point: p_emit = 50/51, p_scat = (49/51)^2, NM/2 = 2.
  const double per = (50.0 / 51.0) * ((49.0 / 51.0) * (49.0 / 51.0));
  CHECK(std::abs(loss_fidelity_model(2, 2, 50.0, 50.0) - std::pow(per, 2.0)) <
        1e-15);

  // Infinite cooperativity switches a factor off entirely.
  const double scat_only = (49.0 / 51.0) * (49.0 / 51.0);
  CHECK(loss_fidelity_model(2, 3, kInf, 50.0) == std::pow(scat_only, 3.0));
  CHECK(loss_fidelity_model(2, 3, kInf, kInf) == 1.0);
  const double emit_only = 50.0 / 51.0;
  CHECK(loss_fidelity_model(2, 3, 50.0, kInf) == std::pow(emit_only, 3.0));

  CHECK_THROWS_AS(loss_fidelity_model(0, 2, 50.0, 50.0), ValidationError);
  CHECK_THROWS_AS(loss_fidelity_model(2, 0, 50.0, 50.0), ValidationError);
  CHECK_THROWS_AS(loss_fidelity_model(2, 2, 1.0, 50.0), ValidationError);
  CHECK_THROWS_AS(loss_fidelity_model(2, 2, 50.0, 1.0), ValidationError);
  CHECK_THROWS_AS(loss_fidelity_model(2, 2, 0.5, 50.0), ValidationError);
}

TEST_CASE("loss model is log-linear in the photon count") {
  const double eta = 20.0;
  const double p_emit = eta / (1.0 + eta);
  const double p_scat = (19.0 / 21.0) * (19.0 / 21.0);
  std::vector<double> xs, ys;
  for (int m = 1; m <= 8; ++m) {
    xs.push_back(static_cast<double>(m));
    ys.push_back(-std::log(loss_fidelity_model(1, m, eta, eta)));
  }
  LinearFit fit = linear_fit(xs, ys);
  CHECK(std::abs(fit.slope - 0.5 * (-std::log(p_emit * p_scat))) < 1e-12);
  CHECK(std::abs(fit.intercept) < 1e-12);
  CHECK(std::abs(fit.r2 - 1.0) < 1e-12);
}

TEST_CASE("loss model per-photon rates at large cooperativity") {
  // -ln F per photon splits into 1/(2 eta_L) from emission and 2/eta_R from
  // scattering, up to O(1/eta^2).
  const double eta = 1000.0;
  const double c_L = -std::log(loss_fidelity_model(1, 1, eta, kInf));
  CHECK(std::abs(c_L - 0.5 / eta) < 1e-3 * (0.5 / eta));
  const double c_R = -std::log(loss_fidelity_model(1, 1, kInf, eta));
  CHECK(std::abs(c_R - 2.0 / eta) < 1e-3 * (2.0 / eta));
}

TEST_CASE("linear fit recovers lines and flags degeneracy") {
  std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.5};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.25 * x - 0.75);
  LinearFit exact = linear_fit(xs, ys);
  CHECK(std::abs(exact.slope - 3.25) < 1e-12);
  CHECK(std::abs(exact.intercept - (-0.75)) < 1e-12);
  CHECK(std::abs(exact.r2 - 1.0) < 1e-12);

  // Classic three-point example with residuals: fit y = x/2 + 1/6 has
  // ss_res = 1/6 against ss_tot = 2/3, so r^2 = 3/4.
  LinearFit noisy = linear_fit({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0});
  CHECK(std::abs(noisy.slope - 0.5) < 1e-14);
  CHECK(std::abs(noisy.intercept - 1.0 / 6.0) < 1e-14);
  CHECK(std::abs(noisy.r2 - 0.75) < 1e-14);

  CHECK_THROWS_AS(linear_fit({1.0, 1.0, 1.0}, {0.0, 1.0, 2.0}),
                  ValidationError);
  CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), ValidationError);
  CHECK_THROWS_AS(linear_fit({1.0, 2.0}, {1.0, 2.0, 3.0}), ValidationError);
}

}  // namespace tapestry
