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

#include "pps/tables.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <tuple>

#include "csv.hpp"
#include "pps/conditions.hpp"
#include "pps/unicode.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

template <typename T, typename Get>
std::vector<T> distinct(const CellMeanTable& table, Get get) {
  std::set<T> seen;
  for (auto const& [key, stat] : table.cells) {
    if (auto const& v = get(key)) seen.insert(*v);
  }
  return {seen.begin(), seen.end()};
}

void require_keys(const CellMeanTable& table, std::initializer_list<GroupKey> keys,
                  std::string_view what) {
  for (auto k : keys) {
    if (!table.has(k)) {
      throw StatsError(std::string(what) +
                       " needs a table grouped by model, language and condition");
    }
  }
}

std::vector<double> condition_values(const CellMeanTable& table, ConditionId c,
                                     const std::optional<std::string>& model,
                                     const std::optional<Language>& language) {
  std::vector<double> out;
  for (auto const& [key, stat] : table.cells) {
    if (key.condition != c) continue;
    if (model && key.model != model) continue;
    if (language && key.language != language) continue;
    out.push_back(stat.mean);
  }
  return out;
}

}  // namespace

bool CellMeanTable::has(GroupKey key) const {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::vector<std::string> CellMeanTable::models() const {
  return distinct<std::string>(*this, [](const CellKey& k) { return k.model; });
}
std::vector<Language> CellMeanTable::languages() const {
  return distinct<Language>(*this, [](const CellKey& k) { return k.language; });
}
std::vector<ConditionId> CellMeanTable::conditions() const {
  return distinct<ConditionId>(*this, [](const CellKey& k) { return k.condition; });
}
std::vector<Domain> CellMeanTable::domains() const {
  return distinct<Domain>(*this, [](const CellKey& k) { return k.domain; });
}

const CellStat* CellMeanTable::find(const CellKey& key) const {
  auto it = cells.find(key);
  return it == cells.end() ? nullptr : &it->second;
}

CellMeanTable cell_means(const std::vector<BenchRecord>& records,
                         std::vector<GroupKey> keys) {
  if (records.empty()) throw StatsError("cell means need at least one record");
  if (keys.empty()) throw StatsError("cell means need at least one grouping key");
  if (std::set<GroupKey>(keys.begin(), keys.end()).size() != keys.size()) {
    throw StatsError("grouping keys must be distinct");
  }
  CellMeanTable table;
  table.keys = std::move(keys);
  std::map<CellKey, std::pair<long long, std::size_t>> sums;
  for (auto const& r : records) {
    CellKey key;
    if (table.has(GroupKey::kModel)) key.model = r.model_id;
    if (table.has(GroupKey::kLanguage)) key.language = r.language;
    if (table.has(GroupKey::kCondition)) key.condition = r.condition;
    if (table.has(GroupKey::kDomain)) key.domain = r.domain;
    auto& [sum, n] = sums[key];
    sum += r.ga_score;
    ++n;
  }
  for (auto const& [key, acc] : sums) {
    table.cells.emplace(key, CellStat{static_cast<double>(acc.first) /
                                          static_cast<double>(acc.second),
                                      acc.second});
  }
  return table;
}

CellMeanTable domain_means(const std::vector<BenchRecord>& records) {
  return cell_means(records, {GroupKey::kDomain, GroupKey::kCondition});
}

CellMeanTable parse_cell_means_csv(std::string_view text) {
  auto const rows = internal::parse_csv(text);
  if (rows.empty()) throw StatsError("cell mean table is empty");
  std::vector<std::string> header;
  for (auto const& h : rows.front().fields) header.emplace_back(internal::trim(h));
  std::vector<std::string> const expected = {"model", "language", "condition", "mean", "n"};
  if (header != expected) {
    throw SchemaError(std::vector<Violation>{
        {"<header>", "expected columns model,language,condition,mean,n", rows.front().line}});
  }

  static const std::regex kNumber(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
  static const std::regex kCount(R"(^[1-9]\d{0,8}$)");
  CellMeanTable table;
  table.keys = {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition};
  std::vector<Violation> problems;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto const& row = rows[i];
    auto fail = [&](std::string field, std::string message) {
      problems.push_back({std::move(field), std::move(message), row.line});
    };
    auto const before = problems.size();
    if (row.fields.size() != 5) {
      fail("<row>", "expected 5 fields");
      continue;
    }
    std::vector<std::string> f;
    for (auto const& v : row.fields) f.emplace_back(internal::trim(v));
    CellKey key;
    key.model = f[0];
    if (f[0].empty()) fail("model", "must not be empty");
    auto const lang = parse_language(f[1]);
    if (!lang) fail("language", "unknown language '" + unicode::sanitize(f[1]) + "'");
    auto const cond = parse_condition(f[2]);
    if (!cond) fail("condition", "unknown condition '" + unicode::sanitize(f[2]) + "'");
    double m = 0.0;
    if (!std::regex_match(f[3], kNumber)) {
      fail("mean", "not a number: '" + unicode::sanitize(f[3]) + "'");
    } else {
      m = std::stod(f[3]);
      if (!(m >= 1.0 && m <= 5.0)) fail("mean", "must lie in [1, 5]");
    }
    std::size_t n = 0;
    if (!std::regex_match(f[4], kCount)) {
      fail("n", "must be a positive integer");
    } else {
      n = std::stoul(f[4]);
    }
    if (problems.size() != before) continue;
    key.language = *lang;
    key.condition = *cond;
    if (!table.cells.emplace(key, CellStat{m, n}).second) {
      fail("<row>", "duplicate cell");
    }
  }
  if (!problems.empty()) throw SchemaError(std::move(problems));
  if (table.cells.empty()) throw StatsError("cell mean table has no rows");
  return table;
}

CellMeanTable load_cell_means_csv(const std::filesystem::path& path) {
  return parse_cell_means_csv(internal::read_file(path));
}

std::map<ConditionId, double> condition_grand_means(const CellMeanTable& table) {
  if (!table.has(GroupKey::kCondition)) {
    throw StatsError("grand means need a table grouped by condition");
  }
  std::map<ConditionId, std::vector<double>> values;
  for (auto const& [key, stat] : table.cells) values[*key.condition].push_back(stat.mean);
  std::map<ConditionId, double> out;
  for (auto const& [c, v] : values) out.emplace(c, mean(v));
  return out;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw StatsError("mean of an empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_sd(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw StatsError("standard deviation needs at least 2 values, got " +
                     std::to_string(values.size()));
  }
  double const m = mean(values);
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    return 0.0;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::optional<double> SigmaTable::row(std::string_view label) const {
  for (auto const& [name, value] : rows) {
    if (name == label) return value;
  }
  return std::nullopt;
}

SigmaTable cross_language_sigma(const CellMeanTable& table, ConditionId condition) {
  require_keys(table, {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition},
               "cross-language sigma");
  SigmaTable out{"language", condition, {}};
  for (auto const& model : table.models()) {
    auto const v = condition_values(table, condition, model, std::nullopt);
    out.rows.emplace_back(model, sample_sd(v));
  }
  out.rows.emplace_back("all", sample_sd(condition_values(table, condition,
                                                          std::nullopt, std::nullopt)));
  return out;
}

SigmaTable cross_model_sigma(const CellMeanTable& table, ConditionId condition) {
  require_keys(table, {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition},
               "cross-model sigma");
  SigmaTable out{"model", condition, {}};
  for (auto lang : table.languages()) {
    auto const v = condition_values(table, condition, std::nullopt, lang);
    out.rows.emplace_back(std::string(to_string(lang)), sample_sd(v));
  }
  out.rows.emplace_back("all", sample_sd(condition_values(table, condition,
                                                          std::nullopt, std::nullopt)));
  return out;
}

std::optional<double> GainTable::gain(std::string_view model, Language language) const {
  for (auto const& r : rows) {
    if (r.model == model && r.language == language) return r.gain;
  }
  return std::nullopt;
}

std::optional<double> GainTable::model_mean(std::string_view model) const {
  for (auto const& [name, value] : model_means) {
    if (name == model) return value;
  }
  return std::nullopt;
}

GainTable gain_table(const CellMeanTable& table, ConditionId x, ConditionId y) {
  require_keys(table, {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition},
               "gain table");
  GainTable out;
  out.x = x;
  out.y = y;
  for (auto const& model : table.models()) {
    std::vector<double> gains;
    for (auto lang : table.languages()) {
      CellKey kx{model, lang, x, std::nullopt};
      CellKey ky{model, lang, y, std::nullopt};
      auto const* cx = table.find(kx);
      auto const* cy = table.find(ky);
      if (cx == nullptr && cy == nullptr) continue;
      if (cx == nullptr || cy == nullptr) {
        throw StatsError("gain table: " + model + "/" + std::string(to_string(lang)) +
                         " lacks condition " +
                         std::string(to_string(cx == nullptr ? x : y)));
      }
      double const g = cx->mean - cy->mean;
      out.rows.push_back({model, lang, g});
      gains.push_back(g);
    }
    if (!gains.empty()) out.model_means.emplace_back(model, mean(gains));
  }
  if (out.rows.empty()) {
    throw StatsError("gain table: conditions " + std::string(to_string(x)) + " and " +
                     std::string(to_string(y)) + " are not present");
  }
  return out;
}

std::vector<Anomaly> anomaly_scan(const CellMeanTable& table, ConditionId structured,
                                  ConditionId baseline) {
  if (!table.has(GroupKey::kCondition)) {
    throw StatsError("anomaly scan needs a table grouped by condition");
  }
  auto const present = table.conditions();
  for (auto c : {structured, baseline}) {
    if (std::find(present.begin(), present.end(), c) == present.end()) {
      throw StatsError("anomaly scan: condition " + std::string(to_string(c)) +
                       " is not present");
    }
  }
  std::vector<Anomaly> out;
  for (auto const& [key, stat] : table.cells) {
    if (key.condition != structured) continue;
    CellKey base = key;
    base.condition = baseline;
    auto const* b = table.find(base);
    if (b == nullptr || !(stat.mean < b->mean)) continue;
    CellKey group = key;
    group.condition.reset();
    out.push_back({group, stat.mean, b->mean, b->mean - stat.mean});
  }
  std::stable_sort(out.begin(), out.end(), [](const Anomaly& a, const Anomaly& b) {
    return a.deficit > b.deficit;
  });
  return out;
}

PairedScores pair_conditions(const std::vector<BenchRecord>& records, ConditionId x,
                             ConditionId y) {
  using Key = std::tuple<std::string, Language, std::string>;
  std::map<Key, const BenchRecord*> ys;
  for (auto const& r : records) {
    if (r.condition == y) ys.emplace(Key{r.model_id, r.language, r.task_id}, &r);
  }
  PairedScores out;
  for (auto const& r : records) {
    if (r.condition != x) continue;
    auto it = ys.find(Key{r.model_id, r.language, r.task_id});
    if (it == ys.end()) continue;
    out.x.push_back(r.ga_score);
    out.y.push_back(it->second->ga_score);
    out.model.push_back(r.model_id);
    out.language.push_back(r.language);
  }
  return out;
}

}  // namespace pps
