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

#include "pps/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "csv.hpp"
#include "pps/conditions.hpp"
#include "pps/error.hpp"

namespace pps {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string key_label(const CellKey& key) {
  std::string out;
  auto add = [&](std::string_view part) {
    if (!out.empty()) out += "/";
    out += part;
  };
  if (key.model) add(*key.model);
  if (key.language) add(upper(to_string(*key.language)));
  if (key.domain) add(to_string(*key.domain));
  if (key.condition) add(to_string(*key.condition));
  return out;
}

bool rows_have_two(const CellMeanTable& t, ConditionId c, bool per_model) {
  if (per_model) {
    for (auto const& m : t.models()) {
      std::size_t n = 0;
      for (auto l : t.languages()) n += t.find({m, l, c, std::nullopt}) != nullptr;
      if (n < 2) return false;
    }
  } else {
    for (auto l : t.languages()) {
      std::size_t n = 0;
      for (auto const& m : t.models()) n += t.find({m, l, c, std::nullopt}) != nullptr;
      if (n < 2) return false;
    }
  }
  return true;
}

void table_row(std::string& out, const std::vector<std::string>& cells) {
  out += "|";
  for (auto const& c : cells) out += " " + c + " |";
  out += "\n";
}

void table_head(std::string& out, const std::vector<std::string>& cells) {
  table_row(out, cells);
  out += "|";
  for (std::size_t i = 0; i < cells.size(); ++i) out += i == 0 ? "---|" : "---:|";
  out += "\n";
}

// Cross-model tables have one row per language code.
bool language_rows(const SigmaTable& t) { return t.axis == "model"; }

void sigma_markdown(std::string& out, const std::vector<SigmaTable>& tables,
                    std::string_view title) {
  if (tables.empty()) return;
  out += "\n## " + std::string(title) + "\n\n";
  std::vector<std::string> head = {"Row"};
  for (auto const& t : tables) head.emplace_back(to_string(t.condition));
  table_head(out, head);
  for (std::size_t r = 0; r < tables.front().rows.size(); ++r) {
    auto const& label = tables.front().rows[r].first;
    std::string shown = label == "all" ? "All" : label;
    if (label != "all" && language_rows(tables.front())) shown = upper(label);
    std::vector<std::string> row = {shown};
    for (auto const& t : tables) {
      auto v = t.row(label);
      row.push_back(v ? format_spread3(*v) : "");
    }
    table_row(out, row);
  }
}

std::string markdown(const Report& r) {
  auto const& show = r.sections;
  std::string out = "# Goal alignment report\n";
  if (show.means) {
    out += "\n## Cell means\n\n";
    auto const conditions = r.cells.conditions();
    std::vector<std::string> head = {"Model", "Language"};
    for (auto c : conditions) head.emplace_back(to_string(c));
    table_head(out, head);
    for (auto const& m : r.cells.models()) {
      for (auto l : r.cells.languages()) {
        std::vector<std::string> row = {m, upper(to_string(l))};
        bool any = false;
        for (auto c : conditions) {
          auto const* s = r.cells.find({m, l, c, std::nullopt});
          any = any || s != nullptr;
          row.push_back(s ? format_fixed3(s->mean) : "");
        }
        if (any) table_row(out, row);
      }
    }
    std::vector<std::string> grand = {"**Grand mean**", ""};
    for (auto c : conditions) {
      auto it = r.grand_means.find(c);
      grand.push_back(it == r.grand_means.end() ? "" : "**" + format_fixed3(it->second) + "**");
    }
    table_row(out, grand);
  }

  if (show.domains && r.domains) {
    out += "\n## Domain means\n\n";
    auto const dconds = r.domains->conditions();
    std::vector<std::string> dhead = {"Domain"};
    for (auto c : dconds) dhead.emplace_back(to_string(c));
    table_head(out, dhead);
    for (auto d : r.domains->domains()) {
      std::vector<std::string> row = {std::string(to_string(d))};
      for (auto c : dconds) {
        auto const* s = r.domains->find({std::nullopt, std::nullopt, c, d});
        row.push_back(s ? format_fixed3(s->mean) : "");
      }
      table_row(out, row);
    }
  }

  if (show.sigma) {
    sigma_markdown(out, r.sigma_language, "Cross-language standard deviation");
    sigma_markdown(out, r.sigma_model, "Cross-model standard deviation");
  }

  if (show.gains && r.gains) {
    auto const& g = *r.gains;
    out += "\n## Gain " + std::string(to_string(g.x)) + " - " +
           std::string(to_string(g.y)) + "\n\n";
    auto const langs = r.cells.languages();
    std::vector<std::string> ghead = {"Model"};
    for (auto l : langs) ghead.push_back(upper(to_string(l)));
    ghead.emplace_back("Mean");
    table_head(out, ghead);
    for (auto const& [model, m] : g.model_means) {
      std::vector<std::string> row = {model};
      for (auto l : langs) {
        auto v = g.gain(model, l);
        row.push_back(v ? format_signed3(*v) : "");
      }
      row.push_back(format_signed3(m));
      table_row(out, row);
    }
  }

  if (show.anomalies && r.gains) {
    auto const& g = *r.gains;
    out += "\n## Cells where " + std::string(to_string(g.x)) + " < " +
           std::string(to_string(g.y)) + "\n\n";
    if (r.anomalies.empty()) {
      out += "None.\n";
    } else {
      table_head(out, {"Cell", std::string(to_string(g.x)), std::string(to_string(g.y)),
                       "Deficit"});
      for (auto const& a : r.anomalies) {
        table_row(out, {key_label(a.key), format_fixed3(a.structured_mean),
                        format_fixed3(a.baseline_mean), format_fixed3(a.deficit)});
      }
    }
  }

  if (show.tests && !r.tests.empty()) {
    out += "\n## Tests\n\n";
    table_head(out, {"Method", "n", "Statistic", "p", "Estimate", "Detail"});
    for (auto const& t : r.tests) {
      table_row(out, {t.method, std::to_string(t.n), format_fixed3(t.statistic),
                      t.p_value < 0.001 && t.p_value > 0.0 ? "<0.001"
                                                          : format_fixed3(t.p_value),
                      t.estimate ? format_signed3(*t.estimate) : "", t.detail});
    }
  }
  return out;
}

std::string csv(const Report& r) {
  auto const& show = r.sections;
  std::string out = "section,row,column,value\n";
  auto line = [&](std::string_view section, const std::string& row,
                  const std::string& column, const std::string& value) {
    out += std::string(section) + "," + internal::csv_escape(row) + "," +
           internal::csv_escape(column) + "," + internal::csv_escape(value) + "\n";
  };
  for (auto const& [key, stat] : r.cells.cells) {
    if (!show.means) break;
    CellKey row = key;
    row.condition.reset();
    line("cell_mean", key_label(row), std::string(to_string(*key.condition)), full(stat.mean));
    line("cell_n", key_label(row), std::string(to_string(*key.condition)),
         std::to_string(stat.n));
  }
  for (auto const& [c, v] : r.grand_means) {
    if (!show.means) break;
    line("grand_mean", "all", std::string(to_string(c)), full(v));
  }
  if (show.domains && r.domains) {
    for (auto const& [key, stat] : r.domains->cells) {
      CellKey row = key;
      row.condition.reset();
      line("domain_mean", key_label(row),
           key.condition ? std::string(to_string(*key.condition)) : "", full(stat.mean));
    }
  }
  for (auto const& t : show.sigma ? r.sigma_language : std::vector<SigmaTable>{}) {
    for (auto const& [label, v] : t.rows) {
      line("sigma_language", label, std::string(to_string(t.condition)), full(v));
    }
  }
  for (auto const& t : show.sigma ? r.sigma_model : std::vector<SigmaTable>{}) {
    for (auto const& [label, v] : t.rows) {
      line("sigma_model", label, std::string(to_string(t.condition)), full(v));
    }
  }
  if (r.gains) {
    std::string const section = "gain_" + std::string(to_string(r.gains->x)) + "_" +
                                std::string(to_string(r.gains->y));
    if (show.gains) {
      for (auto const& g : r.gains->rows) {
        line(section, g.model, upper(to_string(g.language)), full(g.gain));
      }
      for (auto const& [model, m] : r.gains->model_means) line(section, model, "mean", full(m));
    }
    if (show.anomalies) {
      for (auto const& a : r.anomalies) {
        line("deficit", key_label(a.key), "value", full(a.deficit));
      }
    }
  }
  for (auto const& t : r.tests) {
    if (!show.tests) break;
    line("test", t.method, "statistic", full(t.statistic));
    line("test", t.method, "p_value", full(t.p_value));
    line("test", t.method, "n", std::to_string(t.n));
    if (t.estimate) line("test", t.method, "estimate", full(*t.estimate));
    if (t.equivalent) line("test", t.method, "equivalent", *t.equivalent ? "true" : "false");
  }
  return out;
}

}  // namespace

Report build_report(CellMeanTable cells, std::optional<CellMeanTable> domains,
                    std::vector<TestResult> tests, ConditionId gain_x,
                    ConditionId gain_y) {
  for (auto k : {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition}) {
    if (!cells.has(k)) {
      throw StatsError("report needs cell means grouped by model, language and condition");
    }
  }
  Report r;
  r.grand_means = condition_grand_means(cells);
  for (auto c : cells.conditions()) {
    if (rows_have_two(cells, c, true)) r.sigma_language.push_back(cross_language_sigma(cells, c));
    if (rows_have_two(cells, c, false)) r.sigma_model.push_back(cross_model_sigma(cells, c));
  }
  auto const present = cells.conditions();
  auto has = [&](ConditionId c) {
    return std::find(present.begin(), present.end(), c) != present.end();
  };
  if (has(gain_x) && has(gain_y)) {
    r.gains = gain_table(cells, gain_x, gain_y);
    r.anomalies = anomaly_scan(cells, gain_x, gain_y);
  }
  r.cells = std::move(cells);
  r.domains = std::move(domains);
  r.tests = std::move(tests);
  return r;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string emit_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::kMarkdown ? markdown(report) : csv(report);
}

std::string format_fixed3(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  // Round on a 12-decimal rendering so that values such as 0.1795 (stored
  // just below) round the way they read.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", std::fabs(value));
  std::string digits(buf);
  auto const dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  std::string frac = digits.substr(dot + 1, 3);
  bool const up = digits[dot + 4] >= '5';
  std::string number = whole + frac;  // integer in thousandths
  if (up) {
    int i = static_cast<int>(number.size()) - 1;
    while (i >= 0 && number[static_cast<std::size_t>(i)] == '9') {
      number[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      number.insert(number.begin(), '1');
    } else {
      ++number[static_cast<std::size_t>(i)];
    }
  }
  std::string out = number.substr(0, number.size() - 3) + "." + number.substr(number.size() - 3);
  bool const zero = out.find_first_not_of("0.") == std::string::npos;
  if (value < 0 && !zero) out.insert(out.begin(), '-');
  return out;
}

std::string format_signed3(double value) {
  auto out = format_fixed3(value);
  if (out.front() != '-') out.insert(out.begin(), '+');
  return out;
}

std::string format_spread3(double value) {
  auto out = format_fixed3(value);
  if (value > 0 && out == "0.000") return "<0.001";
  return out;
}

}  // namespace pps
