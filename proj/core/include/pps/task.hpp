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

#ifndef PPS_TASK_HPP_
#define PPS_TASK_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pps/intent_spec.hpp"

namespace pps {

enum class Domain : std::uint8_t { kTravel, kBusiness, kTechnical };

inline constexpr std::array<Domain, 3> kAllDomains = {
    Domain::kTravel, Domain::kBusiness, Domain::kTechnical};

std::string_view to_string(Domain domain);
std::optional<Domain> parse_domain(std::string_view name);

enum class ConditionId : std::uint8_t { kA, kB, kC, kD, kE, kF };

inline constexpr std::array<ConditionId, 6> kAllConditions = {
    ConditionId::kA, ConditionId::kB, ConditionId::kC,
    ConditionId::kD, ConditionId::kE, ConditionId::kF};

/// "A" .. "F".
std::string_view to_string(ConditionId condition);
std::optional<ConditionId> parse_condition(std::string_view name);

/// One benchmark task in one language. Parallel task sets share task_id
/// across languages.
struct TaskDescriptor {
  std::string task_id;
  Domain domain = Domain::kTravel;
  Language language = Language::kEn;
  std::string what_sentence;

  friend bool operator==(const TaskDescriptor&, const TaskDescriptor&) = default;
};

}  // namespace pps

#endif  // PPS_TASK_HPP_
