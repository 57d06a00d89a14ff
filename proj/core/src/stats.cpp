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

#include "pps/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "pps/error.hpp"
#include "pps/tables.hpp"

namespace pps {
namespace {

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

// Sum over tie groups of t^3 - t.
double tie_term(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    auto const t = static_cast<double>(j - i);
    total += t * t * t - t;
    i = j;
  }
  return total;
}

std::vector<double> differences(const std::vector<double>& x,
                                const std::vector<double>& y, std::string_view method) {
  if (x.size() != y.size()) {
    throw StatsError(std::string(method) + ": samples differ in length (" +
                     std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

std::vector<double> midranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    double const r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

TestResult wilcoxon_signed_rank(const std::vector<double>& x,
                                const std::vector<double>& y) {
  auto const all = differences(x, y, "wilcoxon");
  std::vector<double> d;
  for (double v : all) {
    if (v != 0.0) d.push_back(v);
  }
  if (d.empty()) throw StatsError("wilcoxon: every difference is zero");

  std::vector<double> magnitude(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) magnitude[i] = std::fabs(d[i]);
  auto const ranks = midranks(magnitude);
  double w_plus = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) w_plus += ranks[i];
  }

  auto const n = d.size();
  TestResult result;
  result.method = "wilcoxon_signed_rank";
  result.statistic = w_plus;
  result.n = n;
  result.estimate = mean(d);

  if (n <= kWilcoxonExactLimit) {
    // Midranks are multiples of 1/2, so doubled ranks are integers and the
    // null distribution of 2*W+ is a subset-sum count over them.
    std::vector<int> doubled(n);
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(ranks[i] * 2.0));
      total += doubled[i];
    }
    std::vector<std::uint64_t> count(static_cast<std::size_t>(total) + 1, 0);
    count[0] = 1;
    int reach = 0;
    for (int r : doubled) {
      for (int s = reach; s >= 0; --s) {
        if (count[static_cast<std::size_t>(s)] != 0) {
          count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
        }
      }
      reach += r;
    }
    auto const w2 = static_cast<int>(std::lround(w_plus * 2.0));
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    for (int s = 0; s <= total; ++s) {
      if (s <= w2) lower += count[static_cast<std::size_t>(s)];
      if (s >= w2) upper += count[static_cast<std::size_t>(s)];
    }
    double const space = std::ldexp(1.0, static_cast<int>(n));
    double const tail = static_cast<double>(std::min(lower, upper)) / space;
    result.p_value = clamp_p(2.0 * tail);
    result.detail = "exact null distribution over 2^" + std::to_string(n) +
                    " sign assignments";
  } else {
    auto const nn = static_cast<double>(n);
    double const expected = nn * (nn + 1.0) / 4.0;
    double const variance =
        nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term(magnitude) / 48.0;
    double const z = (w_plus - expected) / std::sqrt(variance);
    boost::math::normal_distribution<double> normal;
    result.p_value = clamp_p(2.0 * boost::math::cdf(boost::math::complement(normal, std::fabs(z))));
    result.detail = "normal approximation with tie correction, z = " + fmt(z);
  }
  result.detail += "; " + std::to_string(all.size() - n) + " zero difference(s) dropped";
  return result;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw StatsError("kruskal_wallis: needs at least 2 groups");
  std::vector<double> pooled;
  for (auto const& g : groups) {
    if (g.empty()) throw StatsError("kruskal_wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  auto const big_n = static_cast<double>(pooled.size());
  double const correction = 1.0 - tie_term(pooled) / (big_n * big_n * big_n - big_n);
  if (correction <= 0.0) {
    throw StatsError("kruskal_wallis: every value is identical");
  }
  auto const ranks = midranks(pooled);
  double sum_term = 0.0;
  std::size_t offset = 0;
  for (auto const& g : groups) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
    offset += g.size();
    sum_term += r * r / static_cast<double>(g.size());
  }
  double h = (12.0 / (big_n * (big_n + 1.0)) * sum_term - 3.0 * (big_n + 1.0)) / correction;
  h = std::max(h, 0.0);

  auto const df = static_cast<double>(groups.size() - 1);
  boost::math::chi_squared_distribution<double> chi2(df);
  TestResult result;
  result.method = "kruskal_wallis";
  result.statistic = h;
  result.p_value = clamp_p(boost::math::cdf(boost::math::complement(chi2, h)));
  result.n = pooled.size();
  result.detail = std::to_string(groups.size()) + " groups, df = " + fmt(df) +
                  ", tie correction = " + fmt(correction);
  return result;
}

TestResult levene(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw StatsError("levene: needs at least 2 groups");
  std::vector<std::vector<double>> z;
  std::size_t big_n = 0;
  for (auto const& g : groups) {
    if (g.size() < 2) throw StatsError("levene: every group needs at least 2 values");
    double const m = mean(g);
    std::vector<double> dev(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dev[i] = std::fabs(g[i] - m);
    z.push_back(std::move(dev));
    big_n += g.size();
  }
  double grand = 0.0;
  for (auto const& zi : z) {
    for (double v : zi) grand += v;
  }
  grand /= static_cast<double>(big_n);

  double between = 0.0;
  double within = 0.0;
  for (auto const& zi : z) {
    double const mi = mean(zi);
    between += static_cast<double>(zi.size()) * (mi - grand) * (mi - grand);
    for (double v : zi) within += (v - mi) * (v - mi);
  }
  if (within <= 0.0) {
    throw StatsError("levene: absolute deviations have no within-group spread");
  }
  auto const k = static_cast<double>(groups.size());
  auto const nn = static_cast<double>(big_n);
  double const w = (nn - k) / (k - 1.0) * between / within;

  boost::math::fisher_f_distribution<double> f(k - 1.0, nn - k);
  TestResult result;
  result.method = "levene";
  result.statistic = w;
  result.p_value = clamp_p(boost::math::cdf(boost::math::complement(f, w)));
  result.n = big_n;
  result.detail = "mean-centered, df = (" + fmt(k - 1.0) + ", " + fmt(nn - k) + ")";
  return result;
}

TestResult tost_paired(const std::vector<double>& x, const std::vector<double>& y,
                       double delta) {
  auto const d = differences(x, y, "tost");
  if (d.size() < 2) throw StatsError("tost: needs at least 2 pairs");
  if (!(delta > 0.0)) throw StatsError("tost: delta must be positive");

  double const m = mean(d);
  double const sd = sample_sd(d);
  auto const n = d.size();
  TestResult result;
  result.method = "tost_paired";
  result.n = n;
  result.estimate = m;
  if (sd == 0.0) {
    bool const inside = std::fabs(m) < delta;
    result.statistic = 0.0;
    result.p_value = inside ? 0.0 : 1.0;
    result.equivalent = inside;
    result.detail = "zero variance of differences; delta = " + fmt(delta);
    return result;
  }

  double const se = sd / std::sqrt(static_cast<double>(n));
  double const t_lower = (m + delta) / se;  // against mean <= -delta
  double const t_upper = (m - delta) / se;  // against mean >= +delta
  boost::math::students_t_distribution<double> t(static_cast<double>(n - 1));
  double const p_lower = boost::math::cdf(boost::math::complement(t, t_lower));
  double const p_upper = boost::math::cdf(t, t_upper);
  result.p_value = clamp_p(std::max(p_lower, p_upper));
  result.statistic = p_lower >= p_upper ? t_lower : t_upper;
  result.equivalent = result.p_value < 0.05;
  result.detail = "delta = " + fmt(delta) + ", t_lower = " + fmt(t_lower) +
                  " (p = " + fmt(p_lower) + "), t_upper = " + fmt(t_upper) +
                  " (p = " + fmt(p_upper) + "), df = " + std::to_string(n - 1);
  return result;
}

double cohens_d_paired(const std::vector<double>& x, const std::vector<double>& y) {
  auto const d = differences(x, y, "cohens_d");
  if (d.size() < 2) throw StatsError("cohens_d: needs at least 2 pairs");
  double const sd = sample_sd(d);
  double const m = mean(d);
  if (sd == 0.0) {
    if (m == 0.0) return 0.0;
    throw StatsError("cohens_d: differences have zero spread");
  }
  return m / sd;
}

}  // namespace pps
