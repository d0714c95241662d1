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
#ifndef TAPESTRY_KERNELS_HPP_
#define TAPESTRY_KERNELS_HPP_

#include <cstddef>

#include "tapestry/common.hpp"

// Amplitude-array kernels shared by the pure-state and density-matrix
// engines.  `kernels` holds the OpenMP-parallel production versions; the
// loops touch disjoint amplitude groups per iteration and all reductions sum
// fixed-size chunks in index order, so results are bitwise identical for any
// thread count.  `reference` holds deliberately naive serial versions with an
// independent loop structure, kept as a correctness oracle and as the
// baseline for the benchmark target.

namespace tapestry::kernels {

// Applies a 2x2 matrix m (row-major) to qubit q of a state of `size` = 2^n
// amplitudes, little-endian (qubit 0 is the least significant index bit).
void apply_matrix1(cplx* amps, std::size_t size, int q, const cplx* m);

// Applies a 4x4 matrix (row-major) to qubits q0, q1 (distinct); the matrix
// basis index is bit(q0) + 2*bit(q1).
void apply_matrix2(cplx* amps, std::size_t size, int q0, int q1, const cplx* m);

// In-place single-qubit amplitude-damping update of a density matrix stored
// as a flat vector over (row, column) index bits; `hi` is the row-side bit of
// the damped qubit and `lo` the column-side bit.  With b = (bit hi, bit lo):
// rho_00 += (1-p)*rho_11, rho_01 *= sqrt(p), rho_10 *= sqrt(p), rho_11 *= p.
void apply_damping_pair(cplx* rho, std::size_t size, int lo, int hi, double p);

// <a|b>, deterministic chunked reduction.
cplx inner_product(const cplx* a, const cplx* b, std::size_t size);

// Squared 2-norm, deterministic chunked reduction.
double norm_squared(const cplx* a, std::size_t size);

void scale(cplx* a, std::size_t size, cplx factor);

}  // namespace tapestry::kernels

namespace tapestry::reference {

void apply_matrix1(cplx* amps, std::size_t size, int q, const cplx* m);
void apply_matrix2(cplx* amps, std::size_t size, int q0, int q1, const cplx* m);
void apply_damping_pair(cplx* rho, std::size_t size, int lo, int hi, double p);
cplx inner_product(const cplx* a, const cplx* b, std::size_t size);
double norm_squared(const cplx* a, std::size_t size);

}  // namespace tapestry::reference

#endif  // TAPESTRY_KERNELS_HPP_
