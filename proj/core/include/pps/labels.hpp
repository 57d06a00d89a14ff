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

#ifndef PPS_LABELS_HPP_
#define PPS_LABELS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pps/intent_spec.hpp"
#include "pps/mapping.hpp"

namespace pps {

/// Display labels for prompt sections in one language. A table must define
/// all eight dimension keys plus every "costar.<field>" and "risen.<field>".
class LabelTable {
 public:
  /// Throws ParseError or ConfigError (missing or unknown keys).
  static LabelTable parse(std::string_view text, std::string_view source_name);
  static LabelTable load(const std::filesystem::path& path);
  static LabelTable builtin(Language language);
  /// `labels/<lang>.txt` from `dir` if present, else the built-in table.
  static LabelTable resolve(Language language,
                            const std::optional<std::filesystem::path>& dir);

  const std::string& label(DimensionKey key) const;
  const std::string& label(CoStarField field) const;
  const std::string& label(RisenField field) const;

 private:
  const std::string& at(const std::string& key) const;

  std::map<std::string, std::string> labels_;
};

}  // namespace pps

#endif  // PPS_LABELS_HPP_
