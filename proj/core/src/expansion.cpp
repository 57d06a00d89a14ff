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

#include "pps/expansion.hpp"

#include <json.hpp>

#include "pps/error.hpp"
#include "pps/resources.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

using nlohmann::json;

// Pulls the JSON object out of a reply that may carry a code fence or prose.
std::string_view object_span(std::string_view reply) {
  auto const open = reply.find('{');
  auto const close = reply.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open) {
    return {};
  }
  return reply.substr(open, close - open + 1);
}

}  // namespace

ExpansionReply parse_expansion_reply(std::string_view reply, Language language,
                                     const SpecMetadata& metadata) {
  ExpansionReply out;
  auto const span = object_span(reply);
  if (span.empty()) {
    out.reason = "the reply contains no JSON object";
    return out;
  }
  json doc;
  try {
    doc = json::parse(span);
  } catch (const json::parse_error& e) {
    out.reason = std::string("the JSON object does not parse (") + e.what() + ")";
    return out;
  }
  if (!doc.is_object()) {
    out.reason = "the reply is not a JSON object";
    return out;
  }

  IntentSpec spec;
  spec.language = language;
  spec.metadata = metadata;
  spec.metadata.fingerprint.reset();
  for (auto const& [key, value] : doc.items()) {
    auto const dim = parse_dimension(key);
    if (!dim) {
      out.reason = "unexpected key \"" + key + "\"";
      return out;
    }
    if (!value.is_string()) {
      out.reason = "the value of \"" + key + "\" is not a string";
      return out;
    }
    spec[*dim] = value.get<std::string>();
  }

  std::vector<std::string> missing;
  for (auto key : kAllDimensions) {
    auto const& v = spec[key];
    if (!v || internal::trim(*v).empty()) missing.emplace_back(to_string(key));
  }
  if (!missing.empty()) {
    out.incomplete = true;
    out.reason = "missing or empty dimensions:";
    for (auto const& m : missing) out.reason += " " + m;
    return out;
  }

  auto report = validate_spec(spec);
  if (!report.valid()) {
    out.reason = "the values are not usable: " + format_violations(report.violations);
    return out;
  }
  out.spec = std::move(spec);
  return out;
}

IntentSpec expand(const ExpansionRequest& request, ChatBackend& backend,
                  const ExpansionOptions& options) {
  if (internal::trim(request.what).empty()) {
    throw InvalidSpecError(
        std::vector<Violation>{{"what", "task sentence is empty"}});
  }
  if (request.attempt_limit < 1) {
    throw InvalidSpecError(
        std::vector<Violation>{{"attempt_limit", "must be at least 1"}});
  }

  auto const templates = PromptTemplates::load(request.language, options.template_dir);
  auto const prompt =
      internal::fill_template(templates.expand, {{"what", request.what}});

  SpecMetadata metadata = new_metadata();
  if (options.created_at) metadata.created_at = *options.created_at;
  if (options.instruction_id) metadata.instruction_id = *options.instruction_id;

  ChatRequest chat;
  chat.endpoint = options.endpoint;
  chat.temperature = 0.0;
  chat.max_output_tokens = options.max_output_tokens;
  chat.user_text = prompt;

  ExpansionReply last;
  for (int attempt = 1; attempt <= request.attempt_limit; ++attempt) {
    auto const response = backend.complete(chat);
    last = parse_expansion_reply(response.text, request.language, metadata);
    if (last.spec) return seal(std::move(*last.spec));
    chat.user_text = prompt + "\n\n" +
                     internal::fill_template(templates.expand_retry,
                                             {{"reason", last.reason}});
  }
  auto const reason = last.incomplete ? ExpansionError::Reason::kIncomplete
                                      : ExpansionError::Reason::kMalformed;
  throw ExpansionError(reason, std::string(last.incomplete ? "incomplete" : "malformed") +
                                   " expansion after " +
                                   std::to_string(request.attempt_limit) +
                                   " attempt(s): " + last.reason);
}

IntentSpec apply_edits(const IntentSpec& spec,
                       const std::vector<DimensionEdit>& edits) {
  auto report = validate_spec(spec);
  if (!report.valid()) throw InvalidSpecError(std::move(report.violations));

  IntentSpec out = spec;
  for (auto const& edit : edits) {
    bool const removes = !edit.new_text || edit.new_text->empty();
    if (edit.dimension == DimensionKey::kWhat &&
        (removes || internal::trim(*edit.new_text).empty())) {
      throw ExpansionError(ExpansionError::Reason::kWhatDeletion,
                           "the what dimension cannot be deleted or emptied");
    }
    if (removes) {
      out[edit.dimension].reset();
    } else {
      out[edit.dimension] = edit.new_text;
    }
  }
  out.metadata.fingerprint.reset();
  report = validate_spec(out);
  if (!report.valid()) {
    throw ExpansionError(ExpansionError::Reason::kInvalidResult,
                         "edited spec is invalid:\n" +
                             format_violations(report.violations));
  }
  return seal(std::move(out));
}

}  // namespace pps
