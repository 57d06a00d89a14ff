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

#ifndef PPS_TRANSPILE_HPP_
#define PPS_TRANSPILE_HPP_

#include <optional>
#include <set>
#include <string>

#include "pps/intent_spec.hpp"
#include "pps/labels.hpp"
#include "pps/mapping.hpp"

namespace pps {

struct CoStarPrompt {
  std::optional<std::string> context;
  std::string objective;
  std::optional<std::string> style;
  std::optional<std::string> tone;
  std::optional<std::string> audience;
  std::optional<std::string> response_format;

  /// Field value; objective is reported as absent when empty.
  std::optional<std::string> get(CoStarField field) const;
  void set(CoStarField field, std::string value);

  friend bool operator==(const CoStarPrompt&, const CoStarPrompt&) = default;
};

struct RisenPrompt {
  std::optional<std::string> role;
  std::string instructions;
  std::optional<std::string> steps;
  std::string end_goal;
  std::optional<std::string> narrowing;

  std::optional<std::string> get(RisenField field) const;
  void set(RisenField field, std::string value);

  friend bool operator==(const RisenPrompt&, const RisenPrompt&) = default;
};

/// Outcome of projecting a spec onto a framework. `mapped` holds the sources
/// of the applied edges; `dropped` the populated dimensions with no edge.
/// Together they partition the populated dimensions.
template <typename Prompt, typename Field>
struct ProjectionResult {
  Prompt prompt;
  std::set<DimensionKey> dropped;
  std::set<DimensionKey> mapped;
  std::set<Field> unfilled;
};

using CoStarProjection = ProjectionResult<CoStarPrompt, CoStarField>;
using RisenProjection = ProjectionResult<RisenPrompt, RisenField>;

/// Joins several source dimensions landing on one target field.
inline constexpr std::string_view kMergeSeparator = "\n";

/// One "## <label>" section per populated dimension, canonical order, separated
/// by blank lines and without a trailing newline.
/// Throws InvalidSpecError.
std::string render_5w3h_nl(const IntentSpec& spec, const LabelTable& labels);
std::string render_5w3h_nl(const IntentSpec& spec);

/// Throws InvalidSpecError.
CoStarProjection project_costar(const IntentSpec& spec,
                                const MappingProfile& profile);
RisenProjection project_risen(const IntentSpec& spec,
                              const MappingProfile& profile);

/// Sections in C-O-S-T-A-R order; absent fields are omitted. Throws
/// RenderError when the objective is empty.
std::string render_costar(const CoStarPrompt& prompt, const LabelTable& labels);
std::string render_costar(const CoStarPrompt& prompt, Language language);

/// Sections in R-I-S-E-N order. Throws RenderError when instructions or the
/// end goal is empty.
std::string render_risen(const RisenPrompt& prompt, const LabelTable& labels);
std::string render_risen(const RisenPrompt& prompt, Language language);

}  // namespace pps

#endif  // PPS_TRANSPILE_HPP_
