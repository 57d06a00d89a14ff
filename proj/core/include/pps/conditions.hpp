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

#ifndef PPS_CONDITIONS_HPP_
#define PPS_CONDITIONS_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "pps/intent_spec.hpp"
#include "pps/labels.hpp"
#include "pps/mapping.hpp"
#include "pps/task.hpp"

namespace pps {

/// How a condition encodes intent: simple | raw_json | 5w3h | costar | risen.
std::string_view framework_for(ConditionId condition);

/// Where the spec behind a prompt came from: manual | ai_expanded.
enum class SpecSource : std::uint8_t { kManual, kAiExpanded };

std::string_view to_string(SpecSource source);
std::optional<SpecSource> parse_spec_source(std::string_view name);

/// Condition D renders the AI-expanded spec; every other condition that needs
/// a spec uses the manual one.
SpecSource source_for(ConditionId condition);

struct PromptArtifact {
  ConditionId condition = ConditionId::kA;
  std::string task_id;
  Language language = Language::kEn;
  std::string framework;
  std::string source;
  std::string rendered_text;
  std::optional<std::string> spec_fingerprint;

  friend bool operator==(const PromptArtifact&, const PromptArtifact&) = default;
};

/// Builds the prompt for one (task, condition) pair.
///
///   A  the task's one-sentence description, verbatim; `spec` may be absent
///   B  the sealed spec serialized as JSON (metadata included)
///   C  render_5w3h_nl of a manual spec
///   D  render_5w3h_nl of an AI-expanded spec
///   E  render_costar(project_costar(spec, profile))
///   F  render_risen(project_risen(spec, profile))
///
/// Throws LanguageMismatchError when spec.language differs from the task's,
/// InvalidSpecError for invalid or missing specs on B-F.
PromptArtifact make_condition(const TaskDescriptor& task,
                              const IntentSpec* spec, ConditionId condition,
                              const MappingProfile& profile,
                              const LabelTable& labels);

/// Same, with the built-in label table for the task's language.
PromptArtifact make_condition(const TaskDescriptor& task,
                              const IntentSpec* spec, ConditionId condition,
                              const MappingProfile& profile);

}  // namespace pps

#endif  // PPS_CONDITIONS_HPP_
