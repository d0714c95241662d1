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
#include "tapestry/special_functions.hpp"

#include <cmath>

namespace tapestry {

double erfcx(double z) {
  if (z < 0.0) {
    // erfc(z) = 2 - erfc(-z); safe while exp(z^2) stays finite, which holds
    // for every negative argument this library produces (|z| < 26).
    return 2.0 * std::exp(z * z) - erfcx(-z);
  }
  if (z <= 25.0) {
    // exp(z^2) <= e^625, finite, and std::erfc is accurate here.
    return std::exp(z * z) * std::erfc(z);
  }
  // Asymptotic series erfcx(z) = 1/(z sqrt(pi)) * (1 - 1/(2z^2) + 3/(4z^4)
  // - 15/(8z^6) + ...); at z > 25 five terms reach full double precision.
  const double inv2 = 1.0 / (z * z);
  double term = 1.0;
  double sum = 1.0;
  double factor = 1.0;
  for (int k = 1; k <= 5; ++k) {
    factor *= -(2.0 * k - 1.0) / 2.0;
    term = factor * std::pow(inv2, k);
    sum += term;
  }
  return sum / (z * std::sqrt(M_PI));
}

}  // namespace tapestry
