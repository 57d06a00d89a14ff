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

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <set>

#include "commands.hpp"
#include "pps/experiment.hpp"

namespace {

using namespace pps::cli;

// A run where every cell failed for the same reason exits with that reason's
// code; mixed failures use the generic failure code.
int run_error_code(const pps::RunError& e) {
  std::set<std::string> kinds;
  for (auto const& o : e.outcomes()) kinds.insert(o.error_kind);
  if (kinds.size() != 1) return kExitFailure;
  for (int k = 0; k <= static_cast<int>(pps::ErrorKind::kRun); ++k) {
    auto const kind = static_cast<pps::ErrorKind>(k);
    if (*kinds.begin() == pps::to_string(kind)) return exit_code_for(kind);
  }
  return kExitFailure;
}

int report_error(const pps::Error& e) {
  std::cerr << "error (" << pps::to_string(e.kind()) << "): " << e.what() << "\n";
  if (auto const* p = dynamic_cast<const pps::ParseError*>(&e)) {
    std::cerr << "at byte offset " << p->offset() << "\n";
  }
  if (auto const* r = dynamic_cast<const pps::RunError*>(&e)) return run_error_code(*r);
  return exit_code_for(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intent specification toolkit: author, render, run and report"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pps 1.0.0");

  Global g;
  app.add_option("--config", g.config, "Config file (else $PPS_CONFIG, else ./pps.json)");
  app.add_option("--mode", g.mode, "Gateway mode: live, record or replay")
      ->check(CLI::IsMember({"live", "record", "replay"}));
  app.add_option("--labels", g.label_dir, "Directory overriding labels/<lang>.txt");
  app.add_option("--templates", g.template_dir, "Directory overriding templates/");

  std::function<int()> action;

  ValidateArgs validate;
  auto* c = app.add_subcommand("validate", "Check a spec file");
  c->add_option("spec", validate.spec, "Spec JSON file, or - for stdin")->required();
  c->add_flag("--verify", validate.verify, "Also check the stored fingerprint");
  c->callback([&] { action = [&] { return cmd_validate(g, validate); }; });

  FingerprintArgs fp;
  c = app.add_subcommand("fingerprint", "Print or seal a spec's fingerprint");
  c->add_option("spec", fp.spec, "Spec JSON file, or - for stdin")->required();
  c->add_flag("--seal", fp.seal, "Write the spec with its fingerprint instead");
  c->add_option("-o,--output", fp.output, "Output file (default stdout)");
  c->callback([&] { action = [&] { return cmd_fingerprint(g, fp); }; });

  RenderArgs render;
  c = app.add_subcommand("render", "Render the prompt for one condition");
  c->add_option("spec", render.spec, "Spec JSON file, or - for stdin");
  c->add_option("--task", render.task, "Task JSON file {task_id, domain, language, what}");
  c->add_option("--condition", render.condition, "Condition A-F")->required();
  c->add_option("--profile", render.profile, "Mapping profile name or file");
  c->callback([&] { action = [&] { return cmd_render(g, render); }; });

  TranspileArgs tp;
  c = app.add_subcommand("transpile", "Project a spec onto CO-STAR or RISEN");
  c->add_option("spec", tp.spec, "Spec JSON file, or - for stdin")->required();
  c->add_option("--to", tp.to, "costar or risen")->required();
  c->add_option("--profile", tp.profile, "Mapping profile name or file");
  c->add_option("--format", tp.format, "text or json (with dropped/mapped fields)");
  c->callback([&] { action = [&] { return cmd_transpile(g, tp); }; });

  ExpandArgs ex;
  c = app.add_subcommand("expand", "Expand a one-sentence task into a sealed spec");
  c->add_option("--what", ex.what, "Task sentence")->required();
  c->add_option("--language", ex.language, "zh, en or ja");
  c->add_option("--model", ex.model, "Expander model id (else config 'expander')");
  c->add_option("--attempts", ex.attempts, "Attempts before giving up")
      ->check(CLI::Range(1, 10));
  c->add_option("--created-at", ex.created_at, "Fixed created_at for reproducible output");
  c->add_option("--instruction-id", ex.instruction_id, "Fixed instruction_id");
  c->add_option("-o,--output", ex.output, "Output file (default stdout)");
  c->callback([&] { action = [&] { return cmd_expand(g, ex); }; });

  RunArgs run;
  c = app.add_subcommand("run", "Run an experiment matrix");
  c->add_option("matrix", run.matrix, "Matrix JSON file")->required();
  c->add_option("-o,--output", run.output, "Records JSONL to write")->required();
  c->add_option("--run-report", run.run_report, "Cell outcome JSONL to write");
  c->callback([&] { action = [&] { return cmd_run(g, run); }; });

  JudgeArgs jd;
  c = app.add_subcommand("judge", "Score one model output for goal alignment");
  c->add_option("--task", jd.task, "Original task description");
  c->add_option("--task-file", jd.task_file, "File with the task description");
  c->add_option("--output-file", jd.output_file, "File with the model output")->required();
  c->add_option("--language", jd.language, "zh, en or ja");
  c->add_option("--model", jd.model, "Judge model id (else config 'judge')");
  c->callback([&] { action = [&] { return cmd_judge(g, jd); }; });

  IngestArgs in;
  c = app.add_subcommand("ingest", "Validate a JSONL or CSV record file");
  c->add_option("input", in.input, "Record file")->required();
  c->add_option("--mapping", in.mapping, "Field-mapping file for foreign column names");
  c->add_option("-o,--output", in.output, "Write accepted records as JSONL");
  c->callback([&] { action = [&] { return cmd_ingest(g, in); }; });

  ReportArgs rep;
  c = app.add_subcommand("report", "Aggregate tables and hypothesis tests");
  c->add_option("records", rep.records, "Record file (JSONL or CSV)");
  c->add_option("--cells", rep.cells, "Cell-mean CSV: model,language,condition,mean,n");
  c->add_option("--mapping", rep.mapping, "Field-mapping file for the records");
  c->add_option("--format", rep.format, "markdown or csv");
  c->add_option("--tables", rep.tables, "means,domain,sigma,gain,anomaly")->delimiter(',');
  c->add_option("--tests", rep.tests, "tost,kw,levene,wilcoxon")->delimiter(',');
  c->add_option("--delta", rep.delta, "TOST equivalence margin");
  c->add_option("-o,--output", rep.output, "Output file (default stdout)");
  c->callback([&] { action = [&] { return cmd_report(g, rep); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    return action();
  } catch (const pps::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
