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

#ifndef PPS_EXPERIMENT_HPP_
#define PPS_EXPERIMENT_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pps/bench_record.hpp"
#include "pps/conditions.hpp"
#include "pps/error.hpp"
#include "pps/gateway.hpp"
#include "pps/mapping.hpp"

namespace pps {

struct ExperimentMatrix {
  std::vector<ModelEndpoint> models;
  std::vector<Language> languages;
  std::vector<ConditionId> conditions;
  std::vector<TaskDescriptor> tasks;  // one entry per (task_id, language)
  MappingProfile profile = MappingProfile::builtin(kDefaultProfile);
};

/// Nonempty lists, unique model ids, no duplicate (task_id, language), and
/// every task_id present in every listed language.
std::vector<Violation> validate_matrix(const ExperimentMatrix& matrix);

struct SpecKey {
  std::string task_id;
  Language language = Language::kEn;
  SpecSource source = SpecSource::kManual;

  auto operator<=>(const SpecKey&) const = default;
};

using SpecStore = std::map<SpecKey, IntentSpec>;

struct RunOptions {
  ModelEndpoint judge;
  /// created_at of every produced record.
  std::string run_timestamp = "1970-01-01T00:00:00Z";
  /// Cells evaluated at once. Network concurrency is further bounded by the
  /// gateway's per-endpoint limit.
  int concurrency = 1;
  std::optional<std::filesystem::path> template_dir;
  std::optional<std::filesystem::path> label_dir;
  std::optional<int> max_output_tokens;
};

struct CellOutcome {
  std::string record_id;  // "<model_id>/<language>/<condition>/<task_id>"
  std::string model_id;
  Language language = Language::kEn;
  ConditionId condition = ConditionId::kA;
  std::string task_id;
  bool ok = false;
  std::string error_kind;  // empty when ok
  std::string message;     // empty when ok

  friend bool operator==(const CellOutcome&, const CellOutcome&) = default;
};

struct RunResult {
  std::vector<BenchRecord> records;   // successful cells, in matrix order
  std::vector<CellOutcome> outcomes;  // every cell, in matrix order

  std::size_t skipped() const;
};

/// Raised when no cell of a run succeeds. Carries every cell's outcome.
class RunError : public Error {
 public:
  RunError(const std::string& message, std::vector<CellOutcome> outcomes)
      : Error(ErrorKind::kRun, message), outcomes_(std::move(outcomes)) {}
  const std::vector<CellOutcome>& outcomes() const noexcept { return outcomes_; }

 private:
  std::vector<CellOutcome> outcomes_;
};

/// Evaluates models x languages x conditions x tasks. For each cell:
/// make_condition, one completion at temperature 0, judge, record. A failing
/// cell becomes a skipped outcome and never a record.
///
/// Throws ConfigError for an invalid matrix or a judge that is also an
/// evaluated model, and RunError when every cell fails.
RunResult run_experiment(const ExperimentMatrix& matrix, const SpecStore& specs,
                         ChatBackend& backend, const RunOptions& options);

/// One compact JSON object per outcome, keys sorted, each line ending in "\n".
std::string serialize_run_report(const std::vector<CellOutcome>& outcomes);

}  // namespace pps

#endif  // PPS_EXPERIMENT_HPP_
