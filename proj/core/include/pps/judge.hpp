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

#ifndef PPS_JUDGE_HPP_
#define PPS_JUDGE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/gateway.hpp"
#include "pps/intent_spec.hpp"

namespace pps {

/// Model output beyond this many Unicode scalar values is cut before judging.
inline constexpr std::size_t kJudgeExcerptScalars = 8000;

struct JudgePrompt {
  std::string text;
  std::string excerpt;  // the part of the model output embedded in `text`
  bool truncated = false;
};

/// Fills the goal-alignment template with the task description and the first
/// kJudgeExcerptScalars scalar values of `model_output`. Throws RenderError if
/// either input is empty.
JudgePrompt build_judge_prompt(
    std::string_view task_description, std::string_view model_output,
    Language language,
    const std::optional<std::filesystem::path>& template_dir = std::nullopt);

struct Verdict {
  int score = 0;
  std::string reasoning;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Reads a reply of the form
///   SCORE: <1-5>
///   REASONING: <text>
/// Labels are case-insensitive, may carry Markdown emphasis, and may use a
/// full-width colon. The score must be a single integer token in 1..5 and
/// appear on exactly one line before the reasoning. Reasoning is the text
/// after the REASONING label, or every other line when the label is absent.
/// Throws MalformedVerdictError.
Verdict parse_verdict(std::string_view judge_reply);

struct GaEvaluation {
  int score = 0;
  std::string reasoning;
  std::string judge_model_id;
  bool truncated = false;

  friend bool operator==(const GaEvaluation&, const GaEvaluation&) = default;
};

struct JudgeOptions {
  std::optional<std::filesystem::path> template_dir;
  std::optional<int> max_output_tokens;
};

/// build_judge_prompt, one completion, parse_verdict. A malformed verdict is
/// re-asked once with the parse problem appended; a second failure throws
/// MalformedVerdictError.
GaEvaluation judge(std::string_view task_description,
                   std::string_view model_output, Language language,
                   const ModelEndpoint& judge_endpoint, ChatBackend& backend,
                   const JudgeOptions& options = {});

/// Throws ConfigError if the judge model is also one of the evaluated models.
void check_judge_independence(const std::string& judge_model_id,
                              const std::vector<std::string>& evaluated_model_ids);

}  // namespace pps

#endif  // PPS_JUDGE_HPP_
