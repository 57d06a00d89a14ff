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

#ifndef PPS_SRC_TEXT_UTIL_HPP_
#define PPS_SRC_TEXT_UTIL_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pps::internal {

std::string_view trim(std::string_view text);

/// Parses "key = value" lines. Blank lines and lines starting with '#' are
/// skipped. The escapes \n and \\ are decoded in values. Throws ParseError.
std::vector<std::pair<std::string, std::string>> parse_keyed_text(
    std::string_view text, std::string_view source_name);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Current UTC time as RFC 3339 with second precision, e.g.
/// "2026-03-01T12:00:00Z".
std::string now_rfc3339();

/// True if `text` is an RFC 3339 date-time (calendar-checked) with "Z" or a
/// numeric offset.
bool is_rfc3339(std::string_view text);

/// 128 random bits as 32 lowercase hex characters.
std::string random_hex128();

/// Replaces every "{{name}}" with the mapped value. Unknown names are left
/// as-is.
std::string fill_template(std::string_view tmpl,
                          const std::map<std::string, std::string>& values);

bool has_forbidden_control(std::string_view text);

}  // namespace pps::internal

#endif  // PPS_SRC_TEXT_UTIL_HPP_
