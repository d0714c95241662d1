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
#ifndef TAPESTRY_QUADRATURE_HPP_
#define TAPESTRY_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "tapestry/common.hpp"

namespace tapestry {

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double abs_error = 0.0;  // accumulated error estimate
  bool converged = false;
  long evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    abs_error += other.abs_error;
    converged = converged && other.converged;
    evaluations += other.evaluations;
    return *this;
  }
};

// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b] to an absolute
// error target, bisecting the interval with the largest error estimate.
QuadratureResult integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol,
                           int max_intervals = 4000);

// Same, but with the initial interval pre-split at the given breakpoints
// (clamped to [a, b]); useful when the integrand has several scales.
QuadratureResult integrate_with_breakpoints(
    const std::function<cplx(double)>& f, double a, double b,
    const std::vector<double>& breakpoints, double abs_tol,
    int max_intervals = 4000);

// Integral over [a, infinity) for a > 0, via the substitution w = a/u which
// maps it to the finite interval u in (0, 1].  The integrand must decay at
// least like 1/w^2 for the transformed integrand to stay bounded.
QuadratureResult integrate_to_infinity(const std::function<cplx(double)>& f,
                                       double a, double abs_tol,
                                       int max_intervals = 4000);

}  // namespace tapestry

#endif  // TAPESTRY_QUADRATURE_HPP_
