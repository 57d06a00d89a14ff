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

#include "pps/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "pps/error.hpp"

namespace pps::unicode {
namespace {

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

// Walks `text` one scalar at a time; `fn(bytes, ok)` receives each scalar's
// source bytes and whether they decoded cleanly. Returning false stops.
template <typename Fn>
void for_each_scalar(std::string_view text, Fn&& fn) {
  auto const* s = reinterpret_cast<std::uint8_t const*>(text.data());
  auto const length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    std::int32_t const start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (!fn(text.substr(start, i - start), c >= 0)) return;
  }
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  bool valid = true;
  for_each_scalar(text, [&](std::string_view, bool ok) {
    valid = ok;
    return ok;
  });
  return valid;
}

std::string to_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  auto const* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kConfig, "ICU NFC normalizer unavailable");
  }
  auto const source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  auto const normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kConfig, "NFC normalization failed");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::size_t scalar_count(std::string_view text) {
  std::size_t n = 0;
  for_each_scalar(text, [&](std::string_view, bool) {
    ++n;
    return true;
  });
  return n;
}

Prefix take_scalars(std::string_view text, std::size_t max_scalars) {
  Prefix out;
  std::size_t n = 0;
  for_each_scalar(text, [&](std::string_view bytes, bool ok) {
    if (n == max_scalars) {
      out.truncated = true;
      return false;
    }
    out.text += ok ? bytes : kReplacement;
    ++n;
    return true;
  });
  return out;
}

std::string sanitize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for_each_scalar(text, [&](std::string_view bytes, bool ok) {
    out += ok ? bytes : kReplacement;
    return true;
  });
  return out;
}

}  // namespace pps::unicode
