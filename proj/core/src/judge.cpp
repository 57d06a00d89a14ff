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

#include "pps/judge.hpp"

#include <algorithm>
#include <regex>

#include "pps/error.hpp"
#include "pps/resources.hpp"
#include "pps/unicode.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

// "<label> <sep> <rest>" where the label may be wrapped in Markdown emphasis
// or preceded by heading marks, and sep is an ASCII or full-width colon.
std::optional<std::string> labeled_value(std::string_view line,
                                         std::string_view label) {
  static const std::regex kLine(
      R"(^[\s#*_>-]*([A-Za-z]+)[\s*_]*(?::|\xEF\xBC\x9A)[\s*_]*(.*)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(line.begin(), line.end(), m, kLine)) return std::nullopt;
  auto name = m[1].str();
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (name != label) return std::nullopt;
  return m[2].str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string strip_emphasis(std::string_view text) {
  auto t = internal::trim(text);
  while (!t.empty() && (t.back() == '*' || t.back() == '_')) t.remove_suffix(1);
  return std::string(internal::trim(t));
}

}  // namespace

JudgePrompt build_judge_prompt(
    std::string_view task_description, std::string_view model_output,
    Language language, const std::optional<std::filesystem::path>& template_dir) {
  if (internal::trim(task_description).empty()) {
    throw RenderError("judge prompt needs a nonempty task description");
  }
  if (model_output.empty()) {
    throw RenderError("judge prompt needs a nonempty model output");
  }
  auto prefix = unicode::take_scalars(model_output, kJudgeExcerptScalars);
  auto const templates = PromptTemplates::load(language, template_dir);
  JudgePrompt out;
  out.text = internal::fill_template(
      templates.judge,
      {{"task", std::string(task_description)}, {"output", prefix.text}});
  out.excerpt = std::move(prefix.text);
  out.truncated = prefix.truncated;
  return out;
}

Verdict parse_verdict(std::string_view judge_reply) {
  auto const lines = split_lines(judge_reply);
  std::optional<std::string> score_token;
  std::optional<std::size_t> reasoning_line;
  std::vector<std::string_view> others;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (auto v = labeled_value(lines[i], "REASONING")) {
      reasoning_line = i;
      break;
    }
    if (auto v = labeled_value(lines[i], "SCORE")) {
      if (score_token) {
        throw MalformedVerdictError("verdict has more than one SCORE line");
      }
      score_token = strip_emphasis(*v);
      continue;
    }
    others.push_back(lines[i]);
  }

  if (!score_token) throw MalformedVerdictError("verdict has no SCORE line");
  static const std::regex kScore(R"(^[1-5]$)");
  if (!std::regex_match(*score_token, kScore)) {
    throw MalformedVerdictError("SCORE must be one integer from 1 to 5, got '" +
                                unicode::sanitize(*score_token) + "'");
  }

  Verdict verdict;
  verdict.score = (*score_token)[0] - '0';
  std::string reasoning;
  if (reasoning_line) {
    reasoning = *labeled_value(lines[*reasoning_line], "REASONING");
    for (std::size_t i = *reasoning_line + 1; i < lines.size(); ++i) {
      reasoning += "\n";
      reasoning += lines[i];
    }
  } else {
    for (auto line : others) {
      if (!reasoning.empty()) reasoning += "\n";
      reasoning += line;
    }
  }
  verdict.reasoning = std::string(internal::trim(reasoning));
  return verdict;
}

GaEvaluation judge(std::string_view task_description,
                   std::string_view model_output, Language language,
                   const ModelEndpoint& judge_endpoint, ChatBackend& backend,
                   const JudgeOptions& options) {
  auto const prompt = build_judge_prompt(task_description, model_output,
                                         language, options.template_dir);
  ChatRequest request;
  request.endpoint = judge_endpoint;
  request.user_text = prompt.text;
  request.temperature = 0.0;
  request.max_output_tokens = options.max_output_tokens;

  std::string first_problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto const reply = backend.complete(request);
    try {
      auto verdict = parse_verdict(reply.text);
      return GaEvaluation{verdict.score, std::move(verdict.reasoning),
                          judge_endpoint.model_id, prompt.truncated};
    } catch (const MalformedVerdictError& e) {
      if (attempt == 1) {
        throw MalformedVerdictError(std::string("judge ") + judge_endpoint.model_id +
                                    " gave two malformed verdicts: " + first_problem +
                                    "; then " + e.what());
      }
      first_problem = e.what();
      auto const templates = PromptTemplates::load(language, options.template_dir);
      request.user_text = prompt.text + "\n\n" +
                          internal::fill_template(templates.judge_retry,
                                                  {{"reason", first_problem}});
    }
  }
  throw MalformedVerdictError("unreachable");
}

void check_judge_independence(const std::string& judge_model_id,
                              const std::vector<std::string>& evaluated_model_ids) {
  if (std::find(evaluated_model_ids.begin(), evaluated_model_ids.end(),
                judge_model_id) != evaluated_model_ids.end()) {
    throw ConfigError("judge model " + judge_model_id +
                      " is also an evaluated model; use an independent judge");
  }
}

}  // namespace pps
