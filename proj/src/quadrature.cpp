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
#include "tapestry/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace tapestry {
namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1].  The 15 Kronrod
// abscissae are symmetric; entries below are the non-negative half, with
// the Gauss-7 subset at the odd indices (and the center).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  cplx value{0.0, 0.0};
  double error = 0.0;
};

Panel evaluate_panel(const std::function<cplx(double)>& f, double a, double b,
                     long* evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx kronrod(0, 0);
  cplx gauss(0, 0);
  for (int i = 0; i < 8; ++i) {
    cplx pair_sum;
    if (i == 7) {
      pair_sum = f(center);
      *evaluations += 1;
    } else {
      pair_sum = f(center - half * kXgk[i]) + f(center + half * kXgk[i]);
      *evaluations += 2;
    }
    kronrod += kWgk[i] * pair_sum;
    // The Gauss-7 subset sits at the odd indices plus the center (i == 7).
    if (i % 2 == 1) gauss += kWg[i / 2] * pair_sum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  p.error = std::abs(kronrod - gauss) * half;
  return p;
}

}  // namespace

QuadratureResult integrate_with_breakpoints(
    const std::function<cplx(double)>& f, double a, double b,
    const std::vector<double>& breakpoints, double abs_tol,
    int max_intervals) {
  QuadratureResult result;
  if (!(a < b)) {
    result.converged = true;
    return result;
  }
  std::vector<double> pts{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto worse = [](const Panel& lhs, const Panel& rhs) {
    return lhs.error < rhs.error;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  long evals = 0;
  double err_sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Panel p = evaluate_panel(f, pts[i], pts[i + 1], &evals);
    err_sum += p.error;
    queue.push(p);
  }

  int n_panels = static_cast<int>(pts.size()) - 1;
  while (err_sum > abs_tol && n_panels < max_intervals) {
    Panel worst = queue.top();
    if (worst.b - worst.a < 1e-15 * std::max(1.0, std::abs(worst.a))) {
      break;  // cannot refine further in double precision
    }
    queue.pop();
    err_sum -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid, &evals);
    Panel right = evaluate_panel(f, mid, worst.b, &evals);
    err_sum += left.error + right.error;
    queue.push(left);
    queue.push(right);
    ++n_panels;
  }

  // Sum panels in a deterministic (left-to-right) order.
  std::vector<Panel> panels;
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
  for (const Panel& p : panels) result.value += p.value;
  result.abs_error = err_sum;
  result.converged = err_sum <= abs_tol;
  result.evaluations = evals;
  return result;
}

QuadratureResult integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol, int max_intervals) {
  return integrate_with_breakpoints(f, a, b, {}, abs_tol, max_intervals);
}

QuadratureResult integrate_to_infinity(const std::function<cplx(double)>& f,
                                       double a, double abs_tol,
                                       int max_intervals) {
  if (a <= 0.0) {
    throw ValidationError("semi-infinite integration needs a > 0");
  }
  auto transformed = [&f, a](double u) {
    const double w = a / u;
    return f(w) * (w / u);
  };
  return integrate(transformed, 0.0, 1.0, abs_tol, max_intervals);
}

}  // namespace tapestry
