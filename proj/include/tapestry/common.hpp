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
#ifndef TAPESTRY_COMMON_HPP_
#define TAPESTRY_COMMON_HPP_

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tapestry {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Thrown when a requested simulation exceeds a configured memory cap.  The
// CLI maps this to its own exit code so scripted sweeps can detect "too big"
// separately from "wrong".
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed user input (bad JSON fields, out-of-range indices,
// non-unitary custom gates, and the like).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Returns an environment-variable override for a qubit cap, or `fallback`
// when the variable is unset or unparseable.
inline int env_cap(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || parsed < 1 || parsed > 64) return fallback;
  return static_cast<int>(parsed);
}

inline std::uint64_t bit(std::uint64_t x, int b) { return (x >> b) & 1ull; }

}  // namespace tapestry

#endif  // TAPESTRY_COMMON_HPP_
