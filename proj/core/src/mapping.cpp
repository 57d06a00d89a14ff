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

#include "pps/mapping.hpp"

#include <algorithm>

#include "pps/error.hpp"
#include "pps/resources.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

constexpr std::array<std::string_view, 6> kCoStarNames = {
    "context", "objective", "style", "tone", "audience", "response_format"};
constexpr std::array<std::string_view, 5> kRisenNames = {
    "role", "instructions", "steps", "end_goal", "narrowing"};

template <typename Field>
void add_edge(std::vector<MappingEdge<Field>>& edges, MappingEdge<Field> edge,
              std::string_view source_name) {
  if (std::find(edges.begin(), edges.end(), edge) != edges.end()) {
    throw ConfigError(std::string(source_name) + ": duplicate edge " +
                      std::string(to_string(edge.source)) + " -> " +
                      std::string(to_string(edge.target)));
  }
  edges.push_back(edge);
}

}  // namespace

std::string_view to_string(CoStarField field) {
  return kCoStarNames[static_cast<std::size_t>(field)];
}

std::string_view to_string(RisenField field) {
  return kRisenNames[static_cast<std::size_t>(field)];
}

std::optional<CoStarField> parse_costar_field(std::string_view name) {
  for (std::size_t i = 0; i < kCoStarNames.size(); ++i) {
    if (kCoStarNames[i] == name) return kAllCoStarFields[i];
  }
  return std::nullopt;
}

std::optional<RisenField> parse_risen_field(std::string_view name) {
  for (std::size_t i = 0; i < kRisenNames.size(); ++i) {
    if (kRisenNames[i] == name) return kAllRisenFields[i];
  }
  return std::nullopt;
}

MappingProfile MappingProfile::parse(std::string_view text,
                                     std::string_view source_name) {
  MappingProfile profile;
  for (auto const& [key, value] : internal::parse_keyed_text(text, source_name)) {
    if (key == "name") {
      profile.name = value;
      continue;
    }
    if (key != "costar" && key != "risen") {
      throw ConfigError(std::string(source_name) + ": unknown key '" + key +
                        "' (expected name, costar or risen)");
    }
    auto const arrow = value.find("->");
    if (arrow == std::string::npos) {
      throw ConfigError(std::string(source_name) + ": edge '" + value +
                        "' is not of the form '<dimension> -> <field>'");
    }
    auto const source = internal::trim(std::string_view(value).substr(0, arrow));
    auto const target = internal::trim(std::string_view(value).substr(arrow + 2));
    auto const dim = parse_dimension(source);
    if (!dim) {
      throw ConfigError(std::string(source_name) + ": unknown dimension '" +
                        std::string(source) + "'");
    }
    if (key == "costar") {
      auto const field = parse_costar_field(target);
      if (!field) {
        throw ConfigError(std::string(source_name) + ": unknown CO-STAR field '" +
                          std::string(target) + "'");
      }
      add_edge(profile.costar, {*dim, *field}, source_name);
    } else {
      auto const field = parse_risen_field(target);
      if (!field) {
        throw ConfigError(std::string(source_name) + ": unknown RISEN field '" +
                          std::string(target) + "'");
      }
      add_edge(profile.risen, {*dim, *field}, source_name);
    }
  }
  if (profile.name.empty()) {
    throw ConfigError(std::string(source_name) + ": profile has no name");
  }
  return profile;
}

MappingProfile MappingProfile::load(const std::filesystem::path& path) {
  return parse(internal::read_file(path), path.string());
}

MappingProfile MappingProfile::builtin(std::string_view name) {
  auto const file = "profiles/" + std::string(name) + ".profile";
  auto const text = builtin_resource(file);
  if (!text) {
    throw ConfigError("unknown mapping profile '" + std::string(name) + "'");
  }
  return parse(*text, file);
}

std::string MappingProfile::to_text() const {
  std::string out = "name = " + name + "\n";
  for (auto const& e : costar) {
    out += "costar = " + std::string(to_string(e.source)) + " -> " +
           std::string(to_string(e.target)) + "\n";
  }
  for (auto const& e : risen) {
    out += "risen = " + std::string(to_string(e.source)) + " -> " +
           std::string(to_string(e.target)) + "\n";
  }
  return out;
}

std::vector<std::string> builtin_profile_names() {
  std::vector<std::string> out;
  constexpr std::string_view kPrefix = "profiles/";
  constexpr std::string_view kSuffix = ".profile";
  for (auto name : builtin_resource_names()) {
    if (name.starts_with(kPrefix) && name.ends_with(kSuffix)) {
      out.emplace_back(name.substr(kPrefix.size(),
                                   name.size() - kPrefix.size() - kSuffix.size()));
    }
  }
  return out;
}

MappingProfile resolve_profile(std::string_view name_or_path) {
  if (builtin_resource("profiles/" + std::string(name_or_path) + ".profile")) {
    return MappingProfile::builtin(name_or_path);
  }
  std::filesystem::path const path{std::string(name_or_path)};
  if (std::filesystem::is_regular_file(path)) return MappingProfile::load(path);
  throw ConfigError("unknown mapping profile '" + std::string(name_or_path) +
                    "' (not a built-in name or an existing file)");
}

}  // namespace pps
