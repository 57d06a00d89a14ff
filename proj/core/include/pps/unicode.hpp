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

#ifndef PPS_UNICODE_HPP_
#define PPS_UNICODE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace pps::unicode {

bool is_valid_utf8(std::string_view text);

/// NFC-normalizes UTF-8 text. Invalid sequences become U+FFFD.
std::string to_nfc(std::string_view text);

/// Number of Unicode scalar values. Each invalid byte counts as one.
std::size_t scalar_count(std::string_view text);

struct Prefix {
  std::string text;
  bool truncated = false;
};

/// First `max_scalars` scalar values of `text`, never splitting a multi-byte
/// sequence. Invalid sequences are replaced by U+FFFD.
Prefix take_scalars(std::string_view text, std::size_t max_scalars);

/// Replaces invalid UTF-8 sequences by U+FFFD.
std::string sanitize(std::string_view text);

}  // namespace pps::unicode

#endif  // PPS_UNICODE_HPP_
