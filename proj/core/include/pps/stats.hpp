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

#ifndef PPS_STATS_HPP_
#define PPS_STATS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pps {

struct TestResult {
  std::string method;
  double statistic = 0.0;
  double p_value = 1.0;  // in [0, 1]
  std::size_t n = 0;
  std::string detail;
  /// Point estimate where the method has one (mean difference for TOST).
  std::optional<double> estimate;
  /// Equivalence decision for TOST at alpha 0.05.
  std::optional<bool> equivalent;
};

/// Midranks (1-based) of `values`; tied values share the mean of their ranks.
std::vector<double> midranks(const std::vector<double>& values);

/// Largest n (nonzero differences) for which the exact null distribution is
/// enumerated.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Wilcoxon signed-rank test on x - y. Zero differences are discarded. The
/// statistic is W+ (sum of the ranks of positive differences). Two-sided p is
/// 2 * min(P(W+ <= w), P(W+ >= w)), capped at 1: exact under ties for
/// n <= kWilcoxonExactLimit, otherwise a tie-corrected normal approximation
/// without continuity correction. Throws StatsError when x and y differ in
/// length or every difference is zero.
TestResult wilcoxon_signed_rank(const std::vector<double>& x,
                                const std::vector<double>& y);

/// Kruskal-Wallis H with tie correction; p from chi-square with k - 1
/// degrees of freedom. Throws StatsError for fewer than 2 groups, an empty
/// group, or when every value is identical.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Levene's test with mean centering: one-way ANOVA F on |x - group mean|;
/// p from F(k - 1, N - k). Throws StatsError for fewer than 2 groups, a
/// group with fewer than 2 values, or zero within-group spread of the
/// absolute deviations.
TestResult levene(const std::vector<std::vector<double>>& groups);

/// Paired two one-sided t-tests of |mean(x - y)| < delta with n - 1 degrees of
/// freedom. p = max of the two one-sided p-values; equivalent = p < 0.05.
/// With zero variance of the differences: p = 0 and equivalent when
/// |mean| < delta, else p = 1. Throws StatsError for fewer than 2 pairs,
/// mismatched lengths or delta <= 0.
TestResult tost_paired(const std::vector<double>& x, const std::vector<double>& y,
                       double delta);

/// mean(x - y) / sample sd(x - y). Returns 0 when every difference is zero;
/// throws StatsError for other zero-spread input or fewer than 2 pairs.
double cohens_d_paired(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pps

#endif  // PPS_STATS_HPP_
