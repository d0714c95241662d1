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
#ifndef TAPESTRY_SPECIAL_FUNCTIONS_HPP_
#define TAPESTRY_SPECIAL_FUNCTIONS_HPP_

namespace tapestry {

// Scaled complementary error function exp(z^2) erfc(z).  Stable where the
// naive product over- or underflows: for large positive z the asymptotic
// series is used, for negative z the reflection 2 exp(z^2) - erfcx(-z).
double erfcx(double z);

}  // namespace tapestry

#endif  // TAPESTRY_SPECIAL_FUNCTIONS_HPP_
