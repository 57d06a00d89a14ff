// Copyright 2026 The PPS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPS_RESOURCES_HPP_
#define PPS_RESOURCES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/intent_spec.hpp"

namespace pps {

/// Built-in data file compiled into the library, addressed by its path
/// relative to the data directory (e.g. "labels/en.txt").
std::optional<std::string_view> builtin_resource(std::string_view name);
std::vector<std::string_view> builtin_resource_names();

/// Loads a data file from `override_dir` when it exists there, otherwise from
/// the built-in copy. Throws ConfigError if neither exists.
std::string load_resource(std::string_view name,
                          const std::optional<std::filesystem::path>& override_dir);

/// Versioned prompt templates for one language.
struct PromptTemplates {
  std::string expand;        // placeholder: {{what}}
  std::string expand_retry;  // placeholder: {{reason}}
  std::string judge;         // placeholders: {{task}}, {{output}}
  std::string judge_retry;   // placeholder: {{reason}}

  static PromptTemplates load(
      Language language,
      const std::optional<std::filesystem::path>& override_dir = std::nullopt);
};

inline constexpr std::string_view kTemplateVersion = "v1";

}  // namespace pps

#endif  // PPS_RESOURCES_HPP_
