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

#include "pps/transpile.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "pps/error.hpp"

namespace pps {
namespace {

void require_valid(const IntentSpec& spec) {
  auto report = validate_spec(spec);
  if (!report.valid()) throw InvalidSpecError(std::move(report.violations));
}

void append_section(std::string& out, std::string_view label,
                    std::string_view text) {
  if (!out.empty()) out += "\n\n";
  out += "## ";
  out += label;
  out += "\n";
  out += text;
}

template <typename Prompt, typename Field, std::size_t N>
ProjectionResult<Prompt, Field> project(
    const IntentSpec& spec, const std::vector<MappingEdge<Field>>& edges,
    const std::array<Field, N>& all_fields) {
  require_valid(spec);
  ProjectionResult<Prompt, Field> result;
  for (auto field : all_fields) {
    std::vector<DimensionKey> sources;
    for (auto const& edge : edges) {
      if (edge.target == field && spec[edge.source]) sources.push_back(edge.source);
    }
    if (sources.empty()) {
      result.unfilled.insert(field);
      continue;
    }
    // Canonical dimension order, independent of edge order in the profile.
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    std::string value;
    for (auto source : sources) {
      if (!value.empty()) value += kMergeSeparator;
      value += *spec[source];
      result.mapped.insert(source);
    }
    result.prompt.set(field, std::move(value));
  }
  for (auto key : spec.populated()) {
    if (!result.mapped.contains(key)) result.dropped.insert(key);
  }
  return result;
}

}  // namespace

std::optional<std::string> CoStarPrompt::get(CoStarField field) const {
  switch (field) {
    case CoStarField::kContext: return context;
    case CoStarField::kObjective:
      return objective.empty() ? std::nullopt : std::optional(objective);
    case CoStarField::kStyle: return style;
    case CoStarField::kTone: return tone;
    case CoStarField::kAudience: return audience;
    case CoStarField::kResponseFormat: return response_format;
  }
  return std::nullopt;
}

void CoStarPrompt::set(CoStarField field, std::string value) {
  switch (field) {
    case CoStarField::kContext: context = std::move(value); break;
    case CoStarField::kObjective: objective = std::move(value); break;
    case CoStarField::kStyle: style = std::move(value); break;
    case CoStarField::kTone: tone = std::move(value); break;
    case CoStarField::kAudience: audience = std::move(value); break;
    case CoStarField::kResponseFormat: response_format = std::move(value); break;
  }
}

std::optional<std::string> RisenPrompt::get(RisenField field) const {
  switch (field) {
    case RisenField::kRole: return role;
    case RisenField::kInstructions:
      return instructions.empty() ? std::nullopt : std::optional(instructions);
    case RisenField::kSteps: return steps;
    case RisenField::kEndGoal:
      return end_goal.empty() ? std::nullopt : std::optional(end_goal);
    case RisenField::kNarrowing: return narrowing;
  }
  return std::nullopt;
}

void RisenPrompt::set(RisenField field, std::string value) {
  switch (field) {
    case RisenField::kRole: role = std::move(value); break;
    case RisenField::kInstructions: instructions = std::move(value); break;
    case RisenField::kSteps: steps = std::move(value); break;
    case RisenField::kEndGoal: end_goal = std::move(value); break;
    case RisenField::kNarrowing: narrowing = std::move(value); break;
  }
}

std::string render_5w3h_nl(const IntentSpec& spec, const LabelTable& labels) {
  require_valid(spec);
  std::string out;
  for (auto key : spec.populated()) {
    append_section(out, labels.label(key), *spec[key]);
  }
  return out;
}

std::string render_5w3h_nl(const IntentSpec& spec) {
  return render_5w3h_nl(spec, LabelTable::builtin(spec.language));
}

CoStarProjection project_costar(const IntentSpec& spec,
                                const MappingProfile& profile) {
  return project<CoStarPrompt>(spec, profile.costar, kAllCoStarFields);
}

RisenProjection project_risen(const IntentSpec& spec,
                              const MappingProfile& profile) {
  return project<RisenPrompt>(spec, profile.risen, kAllRisenFields);
}

std::string render_costar(const CoStarPrompt& prompt, const LabelTable& labels) {
  if (prompt.objective.empty()) {
    throw RenderError("CO-STAR prompt has an empty objective");
  }
  std::string out;
  for (auto field : kAllCoStarFields) {
    auto const value = prompt.get(field);
    if (value && !value->empty()) append_section(out, labels.label(field), *value);
  }
  return out;
}

std::string render_costar(const CoStarPrompt& prompt, Language language) {
  return render_costar(prompt, LabelTable::builtin(language));
}

std::string render_risen(const RisenPrompt& prompt, const LabelTable& labels) {
  if (prompt.instructions.empty()) {
    throw RenderError("RISEN prompt has empty instructions");
  }
  if (prompt.end_goal.empty()) {
    throw RenderError("RISEN prompt has an empty end goal");
  }
  std::string out;
  for (auto field : kAllRisenFields) {
    auto const value = prompt.get(field);
    if (value && !value->empty()) append_section(out, labels.label(field), *value);
  }
  return out;
}

std::string render_risen(const RisenPrompt& prompt, Language language) {
  return render_risen(prompt, LabelTable::builtin(language));
}

}  // namespace pps
