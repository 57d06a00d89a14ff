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

#ifndef PPS_TABLES_HPP_
#define PPS_TABLES_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/bench_record.hpp"

namespace pps {

enum class GroupKey : std::uint8_t { kModel, kLanguage, kCondition, kDomain };

/// A group key tuple. Components outside the table's grouping are empty.
/// Ordering: model id (byte order), then language (zh, en, ja), condition
/// (A..F) and domain (travel, business, technical).
struct CellKey {
  std::optional<std::string> model;
  std::optional<Language> language;
  std::optional<ConditionId> condition;
  std::optional<Domain> domain;

  auto operator<=>(const CellKey&) const = default;
};

struct CellStat {
  double mean = 0.0;
  std::size_t n = 0;

  friend bool operator==(const CellStat&, const CellStat&) = default;
};

struct CellMeanTable {
  std::vector<GroupKey> keys;
  std::map<CellKey, CellStat> cells;

  bool has(GroupKey key) const;
  /// Model ids present, in table order.
  std::vector<std::string> models() const;
  std::vector<Language> languages() const;
  std::vector<ConditionId> conditions() const;
  std::vector<Domain> domains() const;
  /// Cell lookup; nullptr when absent.
  const CellStat* find(const CellKey& key) const;
};

/// Arithmetic mean of ga_score per group. Throws StatsError on empty input or
/// an empty/duplicated key list.
CellMeanTable cell_means(const std::vector<BenchRecord>& records,
                         std::vector<GroupKey> keys);

/// cell_means grouped by (domain, condition).
CellMeanTable domain_means(const std::vector<BenchRecord>& records);

/// Reads a (model, language, condition) table from CSV with header
///   model,language,condition,mean,n
/// Every mean must lie in [1, 5] and every n be positive. Throws ParseError,
/// SchemaError or IoError.
CellMeanTable load_cell_means_csv(const std::filesystem::path& path);
CellMeanTable parse_cell_means_csv(std::string_view text);

/// Unweighted mean over the cells of each condition. Requires a condition key.
std::map<ConditionId, double> condition_grand_means(const CellMeanTable& table);

/// Sample standard deviation (divisor n - 1). Throws StatsError for fewer
/// than two values.
double sample_sd(const std::vector<double>& values);
double mean(const std::vector<double>& values);

struct SigmaTable {
  std::string axis;  // "language" (spread across languages) or "model"
  ConditionId condition = ConditionId::kA;
  /// Row label -> sigma in table order; the final row is "all".
  std::vector<std::pair<std::string, double>> rows;

  std::optional<double> row(std::string_view label) const;
};

/// Per model: sigma over that model's language means for `condition`.
/// "all": sigma over every (model, language) mean. Requires a table keyed by
/// model, language and condition.
SigmaTable cross_language_sigma(const CellMeanTable& table, ConditionId condition);

/// Per language: sigma over that language's model means. "all" as above.
SigmaTable cross_model_sigma(const CellMeanTable& table, ConditionId condition);

struct GainRow {
  std::string model;
  Language language = Language::kEn;
  double gain = 0.0;
};

struct GainTable {
  ConditionId x = ConditionId::kD;
  ConditionId y = ConditionId::kA;
  std::vector<GainRow> rows;                              // table order
  std::vector<std::pair<std::string, double>> model_means;  // table order

  std::optional<double> gain(std::string_view model, Language language) const;
  std::optional<double> model_mean(std::string_view model) const;
};

/// mean(x) - mean(y) per (model, language), and per-model means of those
/// gains. Throws StatsError when a cell of either condition is missing.
GainTable gain_table(const CellMeanTable& table, ConditionId x, ConditionId y);

struct Anomaly {
  CellKey key;  // the cell's key with the condition removed
  double structured_mean = 0.0;
  double baseline_mean = 0.0;
  double deficit = 0.0;  // baseline_mean - structured_mean, > 0
};

/// Every group where mean(structured) < mean(baseline), strictly, sorted by
/// deficit descending (ties keep table order). Throws StatsError when either
/// condition is absent from the table.
std::vector<Anomaly> anomaly_scan(const CellMeanTable& table,
                                  ConditionId structured, ConditionId baseline);

/// Scores of two conditions paired on (model, language, task_id), in record
/// order of the first condition. Unpaired records are ignored.
struct PairedScores {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::string> model;
  std::vector<Language> language;
};

PairedScores pair_conditions(const std::vector<BenchRecord>& records,
                             ConditionId x, ConditionId y);

}  // namespace pps

#endif  // PPS_TABLES_HPP_
