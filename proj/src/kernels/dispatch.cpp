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

#include "greedyco/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace greedyco::kernels
{
namespace
{

Isa detect() noexcept
{
    if (const char* env = std::getenv("GREEDYCO_ISA"))
    {
        const std::string_view v(env);
        if (v == "scalar")
        {
            return Isa::scalar;
        }
        if (v == "avx2" && isa_supported(Isa::avx2))
        {
            return Isa::avx2;
        }
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa)
    {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept
{
    switch (isa)
    {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa)
{
    if (!isa_supported(isa))
    {
        throw std::runtime_error("kernel variant not supported on this CPU: "
                                 + std::string(isa_name(isa)));
    }
    current().store(isa, std::memory_order_relaxed);
}

double dot(const double* a, const double* b, std::size_t n) noexcept
{
    return active_isa() == Isa::avx2 ? avx2::dot(a, b, n)
                                     : scalar::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept
{
    if (active_isa() == Isa::avx2)
    {
        avx2::axpy(alpha, x, y, n);
    }
    else
    {
        scalar::axpy(alpha, x, y, n);
    }
}

void axpby(double alpha, const double* x, double beta, const double* y,
           double* z, std::size_t n) noexcept
{
    if (active_isa() == Isa::avx2)
    {
        avx2::axpby(alpha, x, beta, y, z, n);
    }
    else
    {
        scalar::axpby(alpha, x, beta, y, z, n);
    }
}

void gemv_t(const double* M, std::size_t n, std::size_t cols, const double* x,
            double* out) noexcept
{
    for (std::size_t j = 0; j < cols; ++j)
    {
        out[j] = dot(M + j * n, x, n);
    }
}

}  // namespace greedyco::kernels
