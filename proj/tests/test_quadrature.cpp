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
#include <cmath>

#include "doctest.h"
#include "tapestry/common.hpp"
#include "tapestry/quadrature.hpp"

namespace tapestry {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST_CASE("quadrature: polynomials up to degree 13 are exact in one panel") {
  // The (7,15) Kronrod rule integrates these without any subdivision, so the
  // result is exact to rounding and the reported error is tiny.
  const QuadratureResult r =
      integrate([](double x) { return cplx{std::pow(x, 10), 0.0}; }, 0.0, 1.0,
                1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 1.0 / 11.0) <= 1e-15);
  CHECK(std::abs(r.value.imag()) <= 1e-18);

  const QuadratureResult r13 =
      integrate([](double x) { return cplx{std::pow(x, 13), 0.0}; }, -1.0, 2.0,
                1e-12);
  CHECK(r13.converged);
  // int_{-1}^{2} x^13 dx = (2^14 - 1) / 14.
  CHECK(std::abs(r13.value.real() - (16384.0 - 1.0) / 14.0) <= 1e-9);
}

TEST_CASE("quadrature: smooth transcendental integrands") {
  const QuadratureResult ex =
      integrate([](double x) { return cplx{std::exp(x), 0.0}; }, 0.0, 1.0,
                1e-13);
  CHECK(ex.converged);
  CHECK(std::abs(ex.value.real() - (std::exp(1.0) - 1.0)) <= 1e-13);

  const QuadratureResult sine =
      integrate([](double x) { return cplx{std::sin(x), 0.0}; }, 0.0, kPi,
                1e-13);
  CHECK(sine.converged);
  CHECK(std::abs(sine.value.real() - 2.0) <= 1e-13);

  const QuadratureResult gauss = integrate(
      [](double x) { return cplx{std::exp(-x * x), 0.0}; }, -12.0, 12.0,
      1e-13);
  CHECK(gauss.converged);
  CHECK(std::abs(gauss.value.real() - std::sqrt(kPi)) <= 1e-12);
}

TEST_CASE("quadrature: complex integrands integrate componentwise") {
  // int_0^pi e^{ix} dx = 2i.
  const QuadratureResult r = integrate(
      [](double x) {
        return cplx{std::cos(x), std::sin(x)};
      },
      0.0, kPi, 1e-13);
  CHECK(r.converged);
  CHECK(std::abs(r.value - cplx{0.0, 2.0}) <= 1e-13);
}

TEST_CASE("quadrature: oscillatory decaying integrand") {
  // int_0^40 e^{-x} sin(50 x) dx = 50/2501 - e^{-40}(...) with the tail
  // below 1e-17.
  const QuadratureResult r = integrate(
      [](double x) { return cplx{std::exp(-x) * std::sin(50.0 * x), 0.0}; },
      0.0, 40.0, 1e-12, 100000);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 50.0 / 2501.0) <= 1e-11);
  CHECK(r.evaluations > 1000);  // oscillations force real subdivision work
}

TEST_CASE("quadrature: breakpoints capture kinks exactly") {
  const QuadratureResult r = integrate_with_breakpoints(
      [](double x) { return cplx{std::abs(x), 0.0}; }, -1.0, 1.0, {0.0},
      1e-13);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 1.0) <= 1e-14);

  // Breakpoints outside the interval are clamped away silently.
  const QuadratureResult clamped = integrate_with_breakpoints(
      [](double x) { return cplx{x * x, 0.0}; }, 0.0, 1.0, {-5.0, 0.5, 7.0},
      1e-13);
  CHECK(clamped.converged);
  CHECK(std::abs(clamped.value.real() - 1.0 / 3.0) <= 1e-14);
}

TEST_CASE("quadrature: semi-infinite tails via the 1/w substitution") {
  // int_1^inf x^-2 dx = 1; the substitution makes this a single exact panel.
  const QuadratureResult inv2 = integrate_to_infinity(
      [](double x) { return cplx{1.0 / (x * x), 0.0}; }, 1.0, 1e-13);
  CHECK(inv2.converged);
  CHECK(std::abs(inv2.value.real() - 1.0) <= 1e-14);

  // int_2^inf e^-x dx = e^-2.
  const QuadratureResult expo = integrate_to_infinity(
      [](double x) { return cplx{std::exp(-x), 0.0}; }, 2.0, 1e-13);
  CHECK(expo.converged);
  CHECK(std::abs(expo.value.real() - std::exp(-2.0)) <= 1e-14);

  // int_a^inf dx/(1+x^2) = pi/2 - atan(a).
  const QuadratureResult lorentz = integrate_to_infinity(
      [](double x) { return cplx{1.0 / (1.0 + x * x), 0.0}; }, 3.0, 1e-13);
  CHECK(lorentz.converged);
  CHECK(std::abs(lorentz.value.real() - (kPi / 2.0 - std::atan(3.0))) <=
        1e-13);
}

TEST_CASE("quadrature: error estimate brackets the true error") {
  const QuadratureResult r = integrate(
      [](double x) { return cplx{std::sqrt(x), 0.0}; }, 0.0, 1.0, 1e-10);
  CHECK(r.converged);
  const double true_error = std::abs(r.value.real() - 2.0 / 3.0);
  CHECK(true_error <= 1e-10);
  CHECK(true_error <= r.abs_error + 1e-15);
}

TEST_CASE("quadrature: starved interval budget reports non-convergence") {
  // An integrable endpoint singularity cannot converge with two intervals.
  const QuadratureResult r = integrate(
      [](double x) { return cplx{1.0 / std::sqrt(x + 1e-12), 0.0}; }, 0.0,
      1.0, 1e-14, 2);
  CHECK_FALSE(r.converged);
  CHECK(r.abs_error > 1e-14);

  // The same integrand converges once the budget is realistic.
  const QuadratureResult ok = integrate(
      [](double x) { return cplx{1.0 / std::sqrt(x + 1e-12), 0.0}; }, 0.0,
      1.0, 1e-9, 4000);
  CHECK(ok.converged);
  CHECK(std::abs(ok.value.real() - 2.0) <= 1e-5);  // 2 sqrt(1) - 2 sqrt(1e-12)
}

TEST_CASE("quadrature: accumulation operator merges partial results") {
  QuadratureResult total =
      integrate([](double x) { return cplx{x, 0.0}; }, 0.0, 1.0, 1e-13);
  const long first_evals = total.evaluations;
  total += integrate([](double x) { return cplx{x, 0.0}; }, 1.0, 2.0, 1e-13);
  CHECK(total.converged);
  CHECK(total.evaluations > first_evals);
  CHECK(std::abs(total.value.real() - 2.0) <= 1e-13);
}

TEST_CASE("quadrature: evaluation counts reflect the work done") {
  const QuadratureResult r =
      integrate([](double x) { return cplx{x, 0.0}; }, 0.0, 1.0, 1e-13);
  // One Gauss-Kronrod panel costs 15 evaluations.
  CHECK(r.evaluations >= 15);
  CHECK(r.evaluations < 200);
}

}  // namespace
}  // namespace tapestry
