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

// Helpers shared by the harness commands.

#pragma once

#include <filesystem>
#include <string>

#include "greedyco/harness.hpp"

namespace greedyco::harness::detail
{

std::filesystem::path output_dir(const ExperimentConfig& cfg,
                                 const CommonOptions& opt);

/// Writes text to path, replacing any previous content. Throws on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

/// Number of nonzero dictionary coefficients of the minimizer.
std::size_t support_size(const ExperimentConfig& cfg);

/// Rate constants of the experiment, or nullopt (with a reason) when the
/// objective has no certified constants or no known minimizer.
std::optional<RateConstants> rate_constants(const ExperimentConfig& cfg,
                                            std::string* reason);

std::string fmt(double v);

}  // namespace greedyco::harness::detail
