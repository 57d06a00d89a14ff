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

#ifndef PPS_MAPPING_HPP_
#define PPS_MAPPING_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/intent_spec.hpp"

namespace pps {

enum class CoStarField : std::uint8_t {
  kContext,
  kObjective,
  kStyle,
  kTone,
  kAudience,
  kResponseFormat,
};

inline constexpr std::array<CoStarField, 6> kAllCoStarFields = {
    CoStarField::kContext, CoStarField::kObjective, CoStarField::kStyle,
    CoStarField::kTone,    CoStarField::kAudience,  CoStarField::kResponseFormat,
};

enum class RisenField : std::uint8_t {
  kRole,
  kInstructions,
  kSteps,
  kEndGoal,
  kNarrowing,
};

inline constexpr std::array<RisenField, 5> kAllRisenFields = {
    RisenField::kRole, RisenField::kInstructions, RisenField::kSteps,
    RisenField::kEndGoal, RisenField::kNarrowing,
};

std::string_view to_string(CoStarField field);
std::string_view to_string(RisenField field);
std::optional<CoStarField> parse_costar_field(std::string_view name);
std::optional<RisenField> parse_risen_field(std::string_view name);

template <typename Field>
struct MappingEdge {
  DimensionKey source;
  Field target;

  friend bool operator==(const MappingEdge&, const MappingEdge&) = default;
};

/// Declarative edge list from 5W3H dimensions to framework fields.
///
/// Profile files use the keyed text format:
///
///     name = table-2
///     costar = what -> objective
///     risen = who -> role
///
/// Built-in profiles ("table-2", the normative one, and "figure-1") are parsed
/// from files in exactly this format.
struct MappingProfile {
  std::string name;
  std::vector<MappingEdge<CoStarField>> costar;
  std::vector<MappingEdge<RisenField>> risen;

  /// Throws ParseError on syntax problems and ConfigError on unknown names or
  /// duplicate edges.
  static MappingProfile parse(std::string_view text, std::string_view source_name);
  static MappingProfile load(const std::filesystem::path& path);
  /// Throws ConfigError for unknown names.
  static MappingProfile builtin(std::string_view name);

  std::string to_text() const;

  friend bool operator==(const MappingProfile&, const MappingProfile&) = default;
};

inline constexpr std::string_view kDefaultProfile = "table-2";

std::vector<std::string> builtin_profile_names();

/// Built-in profile by name, or a profile file path when `name_or_path` names
/// an existing file.
MappingProfile resolve_profile(std::string_view name_or_path);

}  // namespace pps

#endif  // PPS_MAPPING_HPP_
