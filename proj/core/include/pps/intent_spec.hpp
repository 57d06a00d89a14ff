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

#ifndef PPS_INTENT_SPEC_HPP_
#define PPS_INTENT_SPEC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/error.hpp"

namespace pps {

/// The eight 5W3H intent dimensions in canonical order.
enum class DimensionKey : std::uint8_t {
  kWhat,
  kWhy,
  kWho,
  kWhen,
  kWhere,
  kHowToDo,
  kHowMuch,
  kHowFeel,
};

inline constexpr std::size_t kDimensionCount = 8;

inline constexpr std::array<DimensionKey, kDimensionCount> kAllDimensions = {
    DimensionKey::kWhat,    DimensionKey::kWhy,     DimensionKey::kWho,
    DimensionKey::kWhen,    DimensionKey::kWhere,   DimensionKey::kHowToDo,
    DimensionKey::kHowMuch, DimensionKey::kHowFeel,
};

/// Wire name, e.g. "how_to_do".
std::string_view to_string(DimensionKey key);
std::optional<DimensionKey> parse_dimension(std::string_view name);

enum class Language : std::uint8_t { kZh, kEn, kJa };

inline constexpr std::array<Language, 3> kAllLanguages = {
    Language::kZh, Language::kEn, Language::kJa};

/// Lowercase two-letter code.
std::string_view to_string(Language language);
/// Accepts the lowercase code; uppercase ("ZH") is also accepted.
std::optional<Language> parse_language(std::string_view code);

struct SpecMetadata {
  std::string version = "1.0.0";
  std::string created_at;      // RFC 3339, UTC
  std::string instruction_id;  // opaque; generated ids are 32 hex chars
  std::optional<std::string> fingerprint;

  friend bool operator==(const SpecMetadata&, const SpecMetadata&) = default;
};

/// One PPS v1.0.0 intent specification. Only `what` is mandatory; the other
/// seven dimensions are elastic. Absent dimensions are std::nullopt.
struct IntentSpec {
  std::array<std::optional<std::string>, kDimensionCount> dimensions;
  Language language = Language::kEn;
  SpecMetadata metadata;

  std::optional<std::string>& operator[](DimensionKey key) {
    return dimensions[static_cast<std::size_t>(key)];
  }
  const std::optional<std::string>& operator[](DimensionKey key) const {
    return dimensions[static_cast<std::size_t>(key)];
  }

  /// Present dimensions in canonical order.
  std::vector<DimensionKey> populated() const;

  friend bool operator==(const IntentSpec&, const IntentSpec&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

/// Fresh metadata: version 1.0.0, current UTC time, random 128-bit id.
SpecMetadata new_metadata();

/// Unsealed spec with only `what` populated.
IntentSpec make_spec(std::string what, Language language);

/// Checks every invariant of the spec and its metadata. A present fingerprint
/// is checked for format only; integrity is the job of verify().
ValidationReport validate_spec(const IntentSpec& spec);

/// Canonical bytes the fingerprint is computed over: compact JSON with
/// lexicographically sorted keys, NFC-normalized string values, absent
/// dimensions omitted and the fingerprint field excluded.
/// Throws InvalidSpecError.
std::string canonical_bytes(const IntentSpec& spec);

/// Lowercase hex SHA-256 of canonical_bytes(spec). Throws InvalidSpecError.
std::string fingerprint(const IntentSpec& spec);

/// Copy of `spec` with metadata.fingerprint set to fingerprint(spec).
IntentSpec seal(IntentSpec spec);

/// True iff the stored fingerprint equals the recomputed one. Throws
/// FingerprintError when the fingerprint is absent or not 64 lowercase hex
/// characters.
bool verify(const IntentSpec& spec);

/// Parses the serialized JSON form. Throws ParseError on malformed JSON and
/// SchemaError on unknown, missing or mistyped fields. Does not validate
/// dimension content; call validate_spec() for that.
IntentSpec parse_spec(std::string_view text);

/// Serialized JSON form: key-sorted, two-space indented, UTF-8 verbatim.
std::string serialize_spec(const IntentSpec& spec);

/// Number of dimensions whose presence or text differs between `a` and `b`.
std::size_t changed_dimension_count(const IntentSpec& a, const IntentSpec& b);

}  // namespace pps

#endif  // PPS_INTENT_SPEC_HPP_
