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

#ifndef PPS_REPORT_HPP_
#define PPS_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/stats.hpp"
#include "pps/tables.hpp"

namespace pps {

/// Which parts emit_report renders.
struct ReportSections {
  bool means = true;  // cell means with the grand-mean row
  bool domains = true;
  bool sigma = true;
  bool gains = true;
  bool anomalies = true;
  bool tests = true;
};

struct Report {
  ReportSections sections;
  CellMeanTable cells;  // grouped by model, language, condition
  std::optional<CellMeanTable> domains;
  std::map<ConditionId, double> grand_means;
  std::vector<SigmaTable> sigma_language;  // one per condition, when computable
  std::vector<SigmaTable> sigma_model;
  std::optional<GainTable> gains;
  std::vector<Anomaly> anomalies;
  std::vector<TestResult> tests;
};

/// Derives every table from `cells`. Sigma tables are included for a
/// condition when each row has at least two values; the gain table and
/// anomaly list when both `gain_x` and `gain_y` are present.
Report build_report(CellMeanTable cells, std::optional<CellMeanTable> domains = {},
                    std::vector<TestResult> tests = {},
                    ConditionId gain_x = ConditionId::kD,
                    ConditionId gain_y = ConditionId::kA);

enum class ReportFormat { kMarkdown, kCsv };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Markdown: 3-decimal tables. CSV: long format
///   section,row,column,value
/// with values at full precision (%.17g).
std::string emit_report(const Report& report, ReportFormat format);

/// Rounds half away from zero to 3 decimals ("4.463", "-0.350").
std::string format_fixed3(double value);
/// As format_fixed3 with an explicit sign for non-negative values ("+0.000").
std::string format_signed3(double value);
/// As format_fixed3, but a positive value that rounds to zero is "<0.001".
std::string format_spread3(double value);

}  // namespace pps

#endif  // PPS_REPORT_HPP_
