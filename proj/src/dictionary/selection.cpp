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

#include <cmath>
#include <string>

#include "greedyco/dictionary.hpp"
#include "greedyco/random.hpp"

namespace greedyco
{

AtomChoice argmax_atom(std::span<const double> coeffs)
{
    if (coeffs.empty())
    {
        throw InvalidArgument("argmax_atom: empty coefficient sequence");
    }
    std::size_t best = 0;
    double best_abs = std::abs(coeffs[0]);
    for (std::size_t j = 1; j < coeffs.size(); ++j)
    {
        const double a = std::abs(coeffs[j]);
        if (a > best_abs)
        {
            best = j;
            best_abs = a;
        }
    }
    return {best, coeffs[best]};
}

std::string_view to_string(SelectionStrategy s) noexcept
{
    switch (s)
    {
        case SelectionStrategy::exact:
            return "exact";
        case SelectionStrategy::first_admissible:
            return "first_admissible";
        case SelectionStrategy::random_admissible:
            return "random_admissible";
    }
    return "unknown";
}

SelectionStrategy parse_selection_strategy(std::string_view name)
{
    if (name == "exact")
    {
        return SelectionStrategy::exact;
    }
    if (name == "first_admissible")
    {
        return SelectionStrategy::first_admissible;
    }
    if (name == "random_admissible")
    {
        return SelectionStrategy::random_admissible;
    }
    throw InvalidArgument(
        "unknown selection strategy '" + std::string(name)
        + "' (expected exact, first_admissible or random_admissible)");
}

AtomChoice weak_select(std::span<const double> coeffs, double t,
                       SelectionStrategy strategy, std::uint64_t seed)
{
    if (coeffs.empty())
    {
        throw InvalidArgument("weak_select: empty coefficient sequence");
    }
    if (!(t > 0.0 && t <= 1.0))
    {
        throw InvalidArgument("weakness parameter must lie in (0,1], got "
                              + format_real(t));
    }
    const AtomChoice top = argmax_atom(coeffs);
    if (strategy == SelectionStrategy::exact)
    {
        return top;
    }
    const double threshold = t * std::abs(top.value);
    if (strategy == SelectionStrategy::first_admissible)
    {
        for (std::size_t j = 0; j < coeffs.size(); ++j)
        {
            if (std::abs(coeffs[j]) >= threshold)
            {
                return {j, coeffs[j]};
            }
        }
        return top;
    }
    std::vector<std::size_t> admissible;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
    {
        if (std::abs(coeffs[j]) >= threshold)
        {
            admissible.push_back(j);
        }
    }
    Rng rng = make_rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
    const std::size_t j = admissible[pick(rng)];
    return {j, coeffs[j]};
}

}  // namespace greedyco
