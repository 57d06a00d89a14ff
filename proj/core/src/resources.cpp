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

#include "pps/resources.hpp"

#include <utility>

#include "pps/error.hpp"
#include "text_util.hpp"

namespace pps {
namespace internal {
extern const std::pair<std::string_view, std::string_view> kEmbeddedResources[];
extern const std::size_t kEmbeddedResourceCount;
}  // namespace internal

namespace {

std::string template_name(std::string_view stem, Language language) {
  return "templates/" + std::string(stem) + "." + std::string(kTemplateVersion) +
         "." + std::string(to_string(language)) + ".txt";
}

// Template files end with a newline; the placeholder-filled text should not.
std::string strip_final_newline(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

}  // namespace

std::optional<std::string_view> builtin_resource(std::string_view name) {
  for (std::size_t i = 0; i < internal::kEmbeddedResourceCount; ++i) {
    if (internal::kEmbeddedResources[i].first == name) {
      return internal::kEmbeddedResources[i].second;
    }
  }
  return std::nullopt;
}

std::vector<std::string_view> builtin_resource_names() {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < internal::kEmbeddedResourceCount; ++i) {
    out.push_back(internal::kEmbeddedResources[i].first);
  }
  return out;
}

std::string load_resource(std::string_view name,
                          const std::optional<std::filesystem::path>& override_dir) {
  if (override_dir) {
    auto const path = *override_dir / std::filesystem::path(std::string(name));
    if (std::filesystem::exists(path)) return internal::read_file(path);
  }
  if (auto builtin = builtin_resource(name)) return std::string(*builtin);
  throw ConfigError("no data file named '" + std::string(name) + "'");
}

PromptTemplates PromptTemplates::load(
    Language language, const std::optional<std::filesystem::path>& override_dir) {
  auto get = [&](std::string_view stem) {
    return strip_final_newline(
        load_resource(template_name(stem, language), override_dir));
  };
  return PromptTemplates{get("expand"), get("expand_retry"), get("judge"),
                         get("judge_retry")};
}

}  // namespace pps
