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

#ifndef PPS_EXPANSION_HPP_
#define PPS_EXPANSION_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pps/gateway.hpp"
#include "pps/intent_spec.hpp"

namespace pps {

struct ExpansionRequest {
  std::string what;
  Language language = Language::kEn;
  int attempt_limit = 3;
};

struct ExpansionOptions {
  ModelEndpoint endpoint;
  std::optional<std::filesystem::path> template_dir;
  std::optional<int> max_output_tokens;
  /// Metadata for the produced spec. Generated when absent; fix both to make
  /// the output (and its fingerprint) reproducible.
  std::optional<std::string> created_at;
  std::optional<std::string> instruction_id;
};

/// Result of checking one backend reply. `spec` is set on success; otherwise
/// `reason` says what was wrong and `incomplete` distinguishes missing or
/// empty dimensions from unusable structure.
struct ExpansionReply {
  std::optional<IntentSpec> spec;
  std::string reason;
  bool incomplete = false;
};

/// Parses a backend reply into an unsealed spec. Accepts a bare JSON object,
/// optionally wrapped in a Markdown code fence or surrounded by prose. The
/// object must have exactly the eight dimension keys, each a string.
ExpansionReply parse_expansion_reply(std::string_view reply, Language language,
                                     const SpecMetadata& metadata);

/// Generates the seven remaining dimensions for a one-sentence task.
///
/// The task sentence is embedded in the language's expansion template. Each
/// unusable reply triggers a re-ask that quotes the problem, up to
/// `request.attempt_limit` attempts in total. The result is valid and sealed.
///
/// Throws ExpansionError (kMalformed or kIncomplete, after the last attempt),
/// InvalidSpecError for a bad request, and whatever the backend throws.
IntentSpec expand(const ExpansionRequest& request, ChatBackend& backend,
                  const ExpansionOptions& options);

struct DimensionEdit {
  DimensionKey dimension = DimensionKey::kWhat;
  std::optional<std::string> new_text;  // absent or empty deletes the dimension
};

/// Applies edits in order and re-seals. Dimensions not named in `edits` keep
/// their exact bytes. Throws InvalidSpecError if `spec` is invalid and
/// ExpansionError (kWhatDeletion, kInvalidResult) for bad edits.
IntentSpec apply_edits(const IntentSpec& spec,
                       const std::vector<DimensionEdit>& edits);

}  // namespace pps

#endif  // PPS_EXPANSION_HPP_
