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

#include "commands.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "pps/bench_record.hpp"
#include "pps/conditions.hpp"
#include "pps/config.hpp"
#include "pps/expansion.hpp"
#include "pps/experiment.hpp"
#include "pps/gateway.hpp"
#include "pps/judge.hpp"
#include "pps/labels.hpp"
#include "pps/mapping.hpp"
#include "pps/report.hpp"
#include "pps/stats.hpp"
#include "pps/tables.hpp"
#include "pps/transpile.hpp"

namespace pps::cli {
namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buf.str();
}

void write_output(const std::optional<std::string>& path, std::string_view content) {
  if (!path || *path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + *path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + *path);
}

std::string with_newline(std::string text) {
  if (text.empty() || text.back() != '\n') text.push_back('\n');
  return text;
}

CliConfig load_cli_config(const Global& g) {
  CliConfig config;
  if (auto path = discover_config(g.config)) config = load_config(*path);
  if (g.label_dir) config.label_dir = *g.label_dir;
  if (g.template_dir) config.template_dir = *g.template_dir;
  return config;
}

std::unique_ptr<Gateway> make_gateway(const Global& g, const CliConfig& config,
                                      const std::optional<std::filesystem::path>& cache) {
  GatewayOptions options;
  options.mode = resolve_mode(g.mode, config);
  options.cache_dir = cache;
  return std::make_unique<Gateway>(std::move(options));
}

Language language_arg(const std::optional<std::string>& code, const CliConfig& config) {
  if (!code) return config.language;
  auto l = parse_language(*code);
  if (!l) throw ConfigError("unknown language '" + *code + "' (expected zh, en or ja)");
  return *l;
}

IntentSpec read_spec(const std::string& path) { return parse_spec(read_input(path)); }

template <typename Set>
json names(const Set& items) {
  json out = json::array();
  for (auto const& item : items) out.push_back(std::string(to_string(item)));
  return out;
}

std::vector<std::vector<double>> group_by(const std::vector<double>& values,
                                          const std::vector<std::string>& keys) {
  std::map<std::string, std::vector<double>> groups;
  for (std::size_t i = 0; i < values.size(); ++i) groups[keys[i]].push_back(values[i]);
  std::vector<std::vector<double>> out;
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  return out;
}

TestResult run_test(const std::string& name, const std::vector<BenchRecord>& records,
                    double delta) {
  if (name == "tost") {
    auto const p = pair_conditions(records, ConditionId::kD, ConditionId::kE);
    auto r = tost_paired(p.x, p.y, delta);
    r.method = "tost_paired D vs E";
    return r;
  }
  if (name == "wilcoxon") {
    auto const p = pair_conditions(records, ConditionId::kD, ConditionId::kA);
    auto r = wilcoxon_signed_rank(p.x, p.y);
    r.method = "wilcoxon D vs A";
    return r;
  }
  if (name == "kw") {
    auto const p = pair_conditions(records, ConditionId::kD, ConditionId::kA);
    std::vector<double> gains(p.x.size());
    for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = p.x[i] - p.y[i];
    auto r = kruskal_wallis(group_by(gains, p.model));
    r.method = "kruskal_wallis D-A gain by model";
    return r;
  }
  if (name == "levene") {
    std::vector<double> scores;
    std::vector<std::string> langs;
    for (auto const& rec : records) {
      if (rec.condition != ConditionId::kA) continue;
      scores.push_back(rec.ga_score);
      langs.emplace_back(to_string(rec.language));
    }
    auto r = levene(group_by(scores, langs));
    r.method = "levene A by language";
    return r;
  }
  throw ConfigError("unknown test '" + name + "' (expected tost, kw, levene, wilcoxon)");
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec:
    case ErrorKind::kSchema:
    case ErrorKind::kFingerprint:
    case ErrorKind::kLanguageMismatch:
      return kExitInvalid;
    case ErrorKind::kParse:
      return kExitParse;
    case ErrorKind::kAuth:
    case ErrorKind::kTransport:
      return kExitGateway;
    case ErrorKind::kCacheMiss:
      return kExitCacheMiss;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kRender:
    case ErrorKind::kExpansion:
    case ErrorKind::kVerdict:
    case ErrorKind::kStats:
    case ErrorKind::kRun:
      return kExitFailure;
  }
  return kExitFailure;
}

int cmd_validate(const Global&, const ValidateArgs& a) {
  auto const spec = read_spec(a.spec);
  auto const report = validate_spec(spec);
  if (!report.valid()) {
    std::cout << format_violations(report.violations);
    return kExitInvalid;
  }
  if (a.verify && !verify(spec)) {
    std::cout << "fingerprint: does not match the spec content\n";
    return kExitInvalid;
  }
  std::cout << "valid\n";
  return kExitOk;
}

int cmd_fingerprint(const Global&, const FingerprintArgs& a) {
  auto const spec = read_spec(a.spec);
  if (a.seal) {
    write_output(a.output, serialize_spec(seal(spec)));
  } else {
    write_output(a.output, fingerprint(spec) + "\n");
  }
  return kExitOk;
}

int cmd_render(const Global& g, const RenderArgs& a) {
  auto const config = load_cli_config(g);
  auto const condition = parse_condition(a.condition);
  if (!condition) throw ConfigError("unknown condition '" + a.condition + "' (expected A-F)");
  auto const profile = resolve_profile(a.profile.value_or(config.profile));

  std::optional<IntentSpec> spec;
  if (a.spec) spec = read_spec(*a.spec);
  TaskDescriptor task;
  if (a.task) {
    task = parse_task(read_input(*a.task));
  } else if (spec && spec->dimensions[0]) {
    task.task_id = spec->metadata.instruction_id;
    task.language = spec->language;
    task.what_sentence = *(*spec)[DimensionKey::kWhat];
  } else {
    throw ConfigError("render needs --task or a spec file");
  }
  auto const labels = LabelTable::resolve(task.language, config.label_dir);
  auto const artifact = make_condition(task, spec ? &*spec : nullptr, *condition,
                                       profile, labels);
  write_output(std::nullopt, with_newline(artifact.rendered_text));
  return kExitOk;
}

int cmd_transpile(const Global& g, const TranspileArgs& a) {
  auto const config = load_cli_config(g);
  auto const spec = read_spec(a.spec);
  auto report = validate_spec(spec);
  if (!report.valid()) throw InvalidSpecError(std::move(report.violations));
  auto const profile = resolve_profile(a.profile.value_or(config.profile));
  auto const labels = LabelTable::resolve(spec.language, config.label_dir);
  if (a.format != "text" && a.format != "json") {
    throw ConfigError("--format must be text or json");
  }

  json out;
  std::string text;
  if (a.to == "costar") {
    auto const p = project_costar(spec, profile);
    text = render_costar(p.prompt, labels);
    out = {{"dropped", names(p.dropped)}, {"mapped", names(p.mapped)},
           {"unfilled", names(p.unfilled)}};
  } else if (a.to == "risen") {
    auto const p = project_risen(spec, profile);
    text = render_risen(p.prompt, labels);
    out = {{"dropped", names(p.dropped)}, {"mapped", names(p.mapped)},
           {"unfilled", names(p.unfilled)}};
  } else {
    throw ConfigError("--to must be costar or risen");
  }
  if (a.format == "text") {
    write_output(std::nullopt, with_newline(text));
  } else {
    out["framework"] = a.to;
    out["profile"] = profile.name;
    out["prompt"] = text;
    write_output(std::nullopt, out.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_expand(const Global& g, const ExpandArgs& a) {
  auto const config = load_cli_config(g);
  auto const model = a.model ? a.model : config.expander;
  if (!model) throw ConfigError("expand needs --model or an 'expander' entry in the config");
  auto gateway = make_gateway(g, config, config.cache_dir);

  ExpansionRequest request{a.what, language_arg(a.language, config), a.attempts};
  ExpansionOptions options;
  options.endpoint = config.endpoint(*model);
  options.template_dir = config.template_dir;
  options.created_at = a.created_at;
  options.instruction_id = a.instruction_id;
  auto const spec = expand(request, *gateway, options);
  write_output(a.output, serialize_spec(spec));
  return kExitOk;
}

int cmd_run(const Global& g, const RunArgs& a) {
  auto const config = load_cli_config(g);
  auto const file = load_matrix(a.matrix, config);
  auto gateway = make_gateway(g, config, file.cache_dir);
  try {
    auto const result = run_experiment(file.matrix, file.specs, *gateway, file.options);
    persist(result.records, a.output);
    if (a.run_report) write_output(a.run_report, serialize_run_report(result.outcomes));
    std::cerr << result.records.size() << " record(s) written, " << result.skipped()
              << " cell(s) skipped\n";
    for (auto const& o : result.outcomes) {
      if (!o.ok) std::cerr << "skipped " << o.record_id << ": " << o.message << "\n";
    }
  } catch (const RunError& e) {
    if (a.run_report) write_output(a.run_report, serialize_run_report(e.outcomes()));
    throw;
  }
  return kExitOk;
}

int cmd_judge(const Global& g, const JudgeArgs& a) {
  auto const config = load_cli_config(g);
  std::string task;
  if (a.task) {
    task = *a.task;
  } else if (a.task_file) {
    task = read_input(*a.task_file);
    while (!task.empty() && (task.back() == '\n' || task.back() == '\r')) task.pop_back();
  } else {
    throw ConfigError("judge needs --task or --task-file");
  }
  auto const model = a.model ? a.model : config.judge;
  if (!model) throw ConfigError("judge needs --model or a 'judge' entry in the config");
  auto const output = read_input(a.output_file);
  auto gateway = make_gateway(g, config, config.cache_dir);
  JudgeOptions options;
  options.template_dir = config.template_dir;
  auto const e = judge(task, output, language_arg(a.language, config),
                       config.endpoint(*model), *gateway, options);
  json out = {{"score", e.score},
              {"reasoning", e.reasoning},
              {"judge_model_id", e.judge_model_id},
              {"truncated", e.truncated}};
  write_output(std::nullopt, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_ingest(const Global&, const IngestArgs& a) {
  std::optional<FieldMapping> mapping;
  if (a.mapping) mapping = FieldMapping::load(*a.mapping);
  auto const result = ingest(a.input, mapping ? &*mapping : nullptr);
  if (a.output) persist(result.records, *a.output);
  std::cout << result.records.size() << " record(s) accepted, "
            << result.report.violations.size() << " violation(s)\n";
  std::cout << format_violations(result.report.violations);
  return result.report.valid() ? kExitOk : kExitInvalid;
}

int cmd_report(const Global&, const ReportArgs& a) {
  if (a.records.has_value() == a.cells.has_value()) {
    throw ConfigError("report needs exactly one of a records file or --cells");
  }
  auto const format = parse_report_format(a.format);
  if (!format) throw ConfigError("--format must be markdown or csv");

  CellMeanTable cells;
  std::optional<CellMeanTable> domains;
  std::vector<TestResult> tests;
  if (a.cells) {
    if (!a.tests.empty()) {
      throw ConfigError("hypothesis tests need raw records; --cells has only means");
    }
    cells = load_cell_means_csv(*a.cells);
  } else {
    std::optional<FieldMapping> mapping;
    if (a.mapping) mapping = FieldMapping::load(*a.mapping);
    auto const in = ingest(*a.records, mapping ? &*mapping : nullptr);
    if (!in.report.valid()) {
      std::cout << format_violations(in.report.violations);
      return kExitInvalid;
    }
    cells = cell_means(in.records,
                       {GroupKey::kModel, GroupKey::kLanguage, GroupKey::kCondition});
    domains = domain_means(in.records);
    for (auto const& name : a.tests) tests.push_back(run_test(name, in.records, a.delta));
  }

  auto report = build_report(std::move(cells), std::move(domains), std::move(tests));
  if (!a.tables.empty()) {
    ReportSections s{false, false, false, false, false, true};
    for (auto const& t : a.tables) {
      if (t == "means") s.means = true;
      else if (t == "domain") s.domains = true;
      else if (t == "sigma") s.sigma = true;
      else if (t == "gain") s.gains = true;
      else if (t == "anomaly") s.anomalies = true;
      else throw ConfigError("unknown table '" + t + "' (expected means, domain, sigma, gain, anomaly)");
    }
    report.sections = s;
  }
  write_output(a.output, emit_report(report, *format));
  return kExitOk;
}

}  // namespace pps::cli
