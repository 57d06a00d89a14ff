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

#include "pps/labels.hpp"

#include <set>

#include "pps/error.hpp"
#include "pps/resources.hpp"
#include "pps/unicode.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

std::set<std::string> required_keys() {
  std::set<std::string> keys;
  for (auto d : kAllDimensions) keys.emplace(to_string(d));
  for (auto f : kAllCoStarFields) keys.insert("costar." + std::string(to_string(f)));
  for (auto f : kAllRisenFields) keys.insert("risen." + std::string(to_string(f)));
  return keys;
}

std::string labels_file(Language language) {
  return "labels/" + std::string(to_string(language)) + ".txt";
}

}  // namespace

LabelTable LabelTable::parse(std::string_view text, std::string_view source_name) {
  if (!unicode::is_valid_utf8(text)) {
    throw ConfigError(std::string(source_name) + ": label file is not valid UTF-8");
  }
  static const auto kRequired = required_keys();
  LabelTable table;
  for (auto& [key, value] : internal::parse_keyed_text(text, source_name)) {
    if (!kRequired.contains(key)) {
      throw ConfigError(std::string(source_name) + ": unknown label key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError(std::string(source_name) + ": empty label for '" + key + "'");
    }
    table.labels_[key] = value;
  }
  std::string missing;
  for (auto const& key : kRequired) {
    if (!table.labels_.contains(key)) missing += " " + key;
  }
  if (!missing.empty()) {
    throw ConfigError(std::string(source_name) + ": missing labels:" + missing);
  }
  return table;
}

LabelTable LabelTable::load(const std::filesystem::path& path) {
  return parse(internal::read_file(path), path.string());
}

LabelTable LabelTable::builtin(Language language) {
  auto const name = labels_file(language);
  return parse(*builtin_resource(name), name);
}

LabelTable LabelTable::resolve(Language language,
                               const std::optional<std::filesystem::path>& dir) {
  auto const name = labels_file(language);
  return parse(load_resource(name, dir), name);
}

const std::string& LabelTable::at(const std::string& key) const {
  auto it = labels_.find(key);
  if (it == labels_.end()) throw ConfigError("no label for '" + key + "'");
  return it->second;
}

const std::string& LabelTable::label(DimensionKey key) const {
  return at(std::string(to_string(key)));
}

const std::string& LabelTable::label(CoStarField field) const {
  return at("costar." + std::string(to_string(field)));
}

const std::string& LabelTable::label(RisenField field) const {
  return at("risen." + std::string(to_string(field)));
}

}  // namespace pps
