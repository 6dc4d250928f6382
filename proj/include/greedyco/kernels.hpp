/*
 * Copyright 2026 The greedyco Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dense vector kernels used by every inner loop of the library.
//
// Each kernel has a portable scalar reference and an AVX2 variant. The
// variant is chosen once at startup from the CPU feature bits; the
// GREEDYCO_ISA environment variable (scalar|avx2) or set_isa() overrides it.
// Element-wise kernels are bit-identical across variants; reductions differ
// only by summation order.

#pragma once

#include <cstddef>
#include <string_view>

namespace greedyco::kernels
{

enum class Isa
{
    scalar,
    avx2,
};

std::string_view isa_name(Isa isa) noexcept;

/// True when the running CPU can execute the given variant.
bool isa_supported(Isa isa) noexcept;

Isa active_isa() noexcept;

/// Forces a variant; throws if the CPU lacks it. Not thread-safe with
/// respect to concurrently running kernels.
void set_isa(Isa isa);

/// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n) noexcept;

/// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

/// z[i] = alpha * x[i] + beta * y[i]
void axpby(double alpha, const double* x, double beta, const double* y,
           double* z, std::size_t n) noexcept;

/// out[j] = dot(column j of M, x); M is n x cols, column-major.
void gemv_t(const double* M, std::size_t n, std::size_t cols, const double* x,
            double* out) noexcept;

/// Explicit-variant entry points, for equivalence tests and benchmarks.
namespace scalar
{
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void axpby(double alpha, const double* x, double beta, const double* y,
           double* z, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2
{
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void axpby(double alpha, const double* x, double beta, const double* y,
           double* z, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace greedyco::kernels
