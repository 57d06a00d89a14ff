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

#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <chrono>
#include <fstream>
#include <iterator>
#include <random>
#include <regex>

#include "pps/error.hpp"

namespace pps::internal {

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  auto const first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  auto const last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

std::vector<std::pair<std::string, std::string>> parse_keyed_text(
    std::string_view text, std::string_view source_name) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto const end = std::min(text.find('\n', pos), text.size());
    auto const raw = text.substr(pos, end - pos);
    auto const offset = pos;
    pos = end + 1;
    ++line_no;
    auto const line = trim(raw);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto const eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                           ": expected 'key = value'",
                       offset);
    }
    auto const key = trim(line.substr(0, eq));
    auto const value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                           ": empty key",
                       offset);
    }
    std::string decoded;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (value[i] == '\\' && i + 1 < value.size()) {
        if (value[i + 1] == 'n') {
          decoded.push_back('\n');
          ++i;
          continue;
        }
        if (value[i + 1] == '\\') {
          decoded.push_back('\\');
          ++i;
          continue;
        }
      }
      decoded.push_back(value[i]);
    }
    out.emplace_back(std::string(key), std::move(decoded));
    if (end == text.size()) break;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return content;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

std::string now_rfc3339() {
  auto const now = std::chrono::floor<std::chrono::seconds>(
      std::chrono::system_clock::now());
  auto const days = std::chrono::floor<std::chrono::days>(now);
  std::chrono::year_month_day const ymd{days};
  std::chrono::hh_mm_ss const hms{now - days};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

bool is_rfc3339(std::string_view text) {
  static const std::regex kPattern(
      R"(^(\d{4})-(\d{2})-(\d{2})[Tt](\d{2}):(\d{2}):(\d{2})(\.\d+)?([Zz]|[+-](\d{2}):(\d{2}))$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, kPattern)) return false;
  auto num = [&](int i) {
    int v = 0;
    auto const s = m[i].str();
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  std::chrono::year_month_day const ymd{std::chrono::year{num(1)},
                                        std::chrono::month{static_cast<unsigned>(num(2))},
                                        std::chrono::day{static_cast<unsigned>(num(3))}};
  if (!ymd.ok()) return false;
  // RFC 3339 allows a leap second (60).
  if (num(4) > 23 || num(5) > 59 || num(6) > 60) return false;
  if (m[9].matched && (num(9) > 23 || num(10) > 59)) return false;
  return true;
}

std::string random_hex128() {
  static thread_local std::mt19937_64 engine = [] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }();
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(engine()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

std::string fill_template(std::string_view tmpl,
                          const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto const open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    auto const close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    auto const name = std::string(tmpl.substr(open + 2, close - open - 2));
    if (auto it = values.find(name); it != values.end()) {
      out += it->second;
    } else {
      out.append(tmpl.substr(open, close + 2 - open));
    }
    pos = close + 2;
  }
  out.append(tmpl.substr(pos));
  return out;
}

bool has_forbidden_control(std::string_view text) {
  for (char c : text) {
    auto const u = static_cast<unsigned char>(c);
    if (u < 0x20 && u != '\n') return true;
  }
  return false;
}

}  // namespace pps::internal
