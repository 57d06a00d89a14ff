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

#ifndef PPS_BENCH_RECORD_HPP_
#define PPS_BENCH_RECORD_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pps/error.hpp"
#include "pps/intent_spec.hpp"
#include "pps/task.hpp"

namespace pps {

/// One judged model output. Serialized field names match the member names.
struct BenchRecord {
  std::string record_id;
  std::string model_id;
  Language language = Language::kEn;
  ConditionId condition = ConditionId::kA;
  Domain domain = Domain::kTravel;
  std::string task_id;
  std::string prompt_text;
  std::optional<std::string> output_text;
  int ga_score = 0;
  std::optional<std::string> judge_reasoning;
  std::optional<std::string> spec_fingerprint;
  std::string created_at;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Field-level checks on a single record (ids nonempty, score in 1..5,
/// fingerprint format, timestamp format, valid UTF-8).
std::vector<Violation> validate_record(const BenchRecord& record);

/// Compact JSON object with keys in byte order. Absent optionals are omitted.
std::string record_to_json(const BenchRecord& record);

/// Renames foreign column names to record field names before validation.
/// Text format, one pair per line:
///   foreign_name = record_field
///   unused_column = -
/// Columns mapped to "-" are dropped.
class FieldMapping {
 public:
  static FieldMapping parse(std::string_view text, std::string_view source_name);
  static FieldMapping load(const std::filesystem::path& path);

  /// Mapped name for `column`; the column itself when unmapped; empty when
  /// the column is dropped.
  std::string map(const std::string& column) const;

 private:
  std::map<std::string, std::string> renames_;
};

struct IngestResult {
  std::vector<BenchRecord> records;
  ValidationReport report;  // line-numbered violations of rejected rows
};

enum class RecordFormat { kJsonl, kCsv };

/// ".csv" (any case) is CSV; everything else is JSONL.
RecordFormat format_for(const std::filesystem::path& path);

/// Parses and validates records. Rejected rows are reported, valid rows are
/// returned in file order. A row that repeats the (model_id, language,
/// condition, task_id) key of an earlier accepted row is rejected. Throws
/// ParseError when the input has rows but none of them parses.
IngestResult ingest_text(std::string_view text, RecordFormat format,
                         const FieldMapping* mapping = nullptr);

/// ingest_text on a file. Throws IoError when it cannot be read.
IngestResult ingest(const std::filesystem::path& path,
                    const FieldMapping* mapping = nullptr);

/// One record_to_json line per record, each ending in "\n".
std::string serialize_records(const std::vector<BenchRecord>& records);

/// Writes serialize_records(records). Throws IoError.
void persist(const std::vector<BenchRecord>& records,
             const std::filesystem::path& path);

/// Empty sets match everything.
struct RecordFilter {
  std::set<std::string> models;
  std::set<Language> languages;
  std::set<ConditionId> conditions;
  std::set<Domain> domains;

  bool matches(const BenchRecord& record) const;
};

std::vector<BenchRecord> filter(const std::vector<BenchRecord>& records,
                                const RecordFilter& predicate);

}  // namespace pps

#endif  // PPS_BENCH_RECORD_HPP_
