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

#include "pps/conditions.hpp"

#include <utility>

#include "pps/error.hpp"
#include "pps/transpile.hpp"

namespace pps {

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::kTravel: return "travel";
    case Domain::kBusiness: return "business";
    case Domain::kTechnical: return "technical";
  }
  return "travel";
}

std::optional<Domain> parse_domain(std::string_view name) {
  for (auto d : kAllDomains) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

std::string_view to_string(ConditionId condition) {
  static constexpr std::string_view kNames[] = {"A", "B", "C", "D", "E", "F"};
  return kNames[static_cast<std::size_t>(condition)];
}

std::optional<ConditionId> parse_condition(std::string_view name) {
  for (auto c : kAllConditions) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view framework_for(ConditionId condition) {
  switch (condition) {
    case ConditionId::kA: return "simple";
    case ConditionId::kB: return "raw_json";
    case ConditionId::kC:
    case ConditionId::kD: return "5w3h";
    case ConditionId::kE: return "costar";
    case ConditionId::kF: return "risen";
  }
  return "simple";
}

std::string_view to_string(SpecSource source) {
  return source == SpecSource::kManual ? "manual" : "ai_expanded";
}

std::optional<SpecSource> parse_spec_source(std::string_view name) {
  if (name == "manual") return SpecSource::kManual;
  if (name == "ai_expanded") return SpecSource::kAiExpanded;
  return std::nullopt;
}

SpecSource source_for(ConditionId condition) {
  return condition == ConditionId::kD ? SpecSource::kAiExpanded
                                      : SpecSource::kManual;
}

PromptArtifact make_condition(const TaskDescriptor& task,
                              const IntentSpec* spec, ConditionId condition,
                              const MappingProfile& profile,
                              const LabelTable& labels) {
  PromptArtifact artifact;
  artifact.condition = condition;
  artifact.task_id = task.task_id;
  artifact.language = task.language;
  artifact.framework = std::string(framework_for(condition));
  artifact.source = std::string(to_string(source_for(condition)));

  if (condition == ConditionId::kA) {
    if (task.what_sentence.empty()) {
      throw RenderError("task " + task.task_id + " has an empty task sentence");
    }
    artifact.rendered_text = task.what_sentence;
    return artifact;
  }

  if (spec == nullptr) {
    throw InvalidSpecError(std::vector<Violation>{{"spec", "condition " + std::string(to_string(condition)) +
                                         " requires a spec for task " + task.task_id}});
  }
  if (spec->language != task.language) {
    throw LanguageMismatchError(
        "spec language " + std::string(to_string(spec->language)) +
        " does not match task " + task.task_id + " language " +
        std::string(to_string(task.language)));
  }
  auto report = validate_spec(*spec);
  if (!report.valid()) throw InvalidSpecError(std::move(report.violations));

  switch (condition) {
    case ConditionId::kB: {
      auto sealed = seal(*spec);
      artifact.spec_fingerprint = sealed.metadata.fingerprint;
      artifact.rendered_text = serialize_spec(sealed);
      break;
    }
    case ConditionId::kC:
    case ConditionId::kD:
      artifact.rendered_text = render_5w3h_nl(*spec, labels);
      break;
    case ConditionId::kE:
      artifact.rendered_text =
          render_costar(project_costar(*spec, profile).prompt, labels);
      break;
    case ConditionId::kF:
      artifact.rendered_text =
          render_risen(project_risen(*spec, profile).prompt, labels);
      break;
    case ConditionId::kA:
      break;
  }
  if (!artifact.spec_fingerprint) artifact.spec_fingerprint = fingerprint(*spec);
  return artifact;
}

PromptArtifact make_condition(const TaskDescriptor& task,
                              const IntentSpec* spec, ConditionId condition,
                              const MappingProfile& profile) {
  return make_condition(task, spec, condition, profile,
                        LabelTable::builtin(task.language));
}

}  // namespace pps
