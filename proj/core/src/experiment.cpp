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

#include "pps/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "pps/judge.hpp"
#include "pps/labels.hpp"

namespace pps {
namespace {

struct Cell {
  const ModelEndpoint* model;
  Language language;
  ConditionId condition;
  const TaskDescriptor* task;
};

std::string cell_id(const Cell& c) {
  return c.model->model_id + "/" + std::string(to_string(c.language)) + "/" +
         std::string(to_string(c.condition)) + "/" + c.task->task_id;
}

}  // namespace

std::vector<Violation> validate_matrix(const ExperimentMatrix& m) {
  std::vector<Violation> out;
  if (m.models.empty()) out.push_back({"models", "list is empty"});
  if (m.languages.empty()) out.push_back({"languages", "list is empty"});
  if (m.conditions.empty()) out.push_back({"conditions", "list is empty"});
  if (m.tasks.empty()) out.push_back({"tasks", "list is empty"});

  std::set<std::string> model_ids;
  for (auto const& model : m.models) {
    if (model.model_id.empty()) out.push_back({"models", "model without model_id"});
    if (!model_ids.insert(model.model_id).second) {
      out.push_back({"models", "duplicate model_id " + model.model_id});
    }
  }
  if (std::set<Language>(m.languages.begin(), m.languages.end()).size() !=
      m.languages.size()) {
    out.push_back({"languages", "duplicate language"});
  }
  if (std::set<ConditionId>(m.conditions.begin(), m.conditions.end()).size() !=
      m.conditions.size()) {
    out.push_back({"conditions", "duplicate condition"});
  }

  std::set<std::pair<std::string, Language>> present;
  std::set<std::string> task_ids;
  for (auto const& t : m.tasks) {
    if (t.task_id.empty()) out.push_back({"tasks", "task without task_id"});
    if (t.what_sentence.empty()) {
      out.push_back({"tasks", "task " + t.task_id + " has an empty sentence"});
    }
    if (!present.emplace(t.task_id, t.language).second) {
      out.push_back({"tasks", "task " + t.task_id + " is listed twice for " +
                                  std::string(to_string(t.language))});
    }
    task_ids.insert(t.task_id);
  }
  for (auto const& id : task_ids) {
    for (auto lang : m.languages) {
      if (!present.contains({id, lang})) {
        out.push_back({"tasks", "task " + id + " has no " +
                                    std::string(to_string(lang)) + " version"});
      }
    }
  }
  return out;
}

std::size_t RunResult::skipped() const {
  return static_cast<std::size_t>(std::count_if(
      outcomes.begin(), outcomes.end(), [](const CellOutcome& o) { return !o.ok; }));
}

RunResult run_experiment(const ExperimentMatrix& matrix, const SpecStore& specs,
                         ChatBackend& backend, const RunOptions& options) {
  if (auto problems = validate_matrix(matrix); !problems.empty()) {
    throw ConfigError("invalid experiment matrix:\n" + format_violations(problems));
  }
  std::vector<std::string> model_ids;
  for (auto const& m : matrix.models) model_ids.push_back(m.model_id);
  check_judge_independence(options.judge.model_id, model_ids);

  std::map<Language, LabelTable> labels;
  for (auto lang : matrix.languages) {
    labels.emplace(lang, LabelTable::resolve(lang, options.label_dir));
  }

  std::vector<Cell> cells;
  for (auto const& model : matrix.models) {
    for (auto lang : matrix.languages) {
      for (auto cond : matrix.conditions) {
        for (auto const& task : matrix.tasks) {
          if (task.language == lang) cells.push_back({&model, lang, cond, &task});
        }
      }
    }
  }

  std::vector<std::optional<BenchRecord>> records(cells.size());
  std::vector<CellOutcome> outcomes(cells.size());
  JudgeOptions judge_options{options.template_dir, options.max_output_tokens};

  auto evaluate = [&](std::size_t i) {
    auto const& cell = cells[i];
    auto& outcome = outcomes[i];
    outcome.record_id = cell_id(cell);
    outcome.model_id = cell.model->model_id;
    outcome.language = cell.language;
    outcome.condition = cell.condition;
    outcome.task_id = cell.task->task_id;
    try {
      const IntentSpec* spec = nullptr;
      if (cell.condition != ConditionId::kA) {
        auto it = specs.find({cell.task->task_id, cell.language,
                              source_for(cell.condition)});
        if (it != specs.end()) spec = &it->second;
      }
      auto const artifact = make_condition(*cell.task, spec, cell.condition,
                                           matrix.profile, labels.at(cell.language));

      ChatRequest request;
      request.endpoint = *cell.model;
      request.user_text = artifact.rendered_text;
      request.temperature = 0.0;
      request.max_output_tokens = options.max_output_tokens;
      auto const response = backend.complete(request);

      auto const evaluation = judge(cell.task->what_sentence, response.text,
                                    cell.language, options.judge, backend,
                                    judge_options);

      BenchRecord r;
      r.record_id = outcome.record_id;
      r.model_id = cell.model->model_id;
      r.language = cell.language;
      r.condition = cell.condition;
      r.domain = cell.task->domain;
      r.task_id = cell.task->task_id;
      r.prompt_text = artifact.rendered_text;
      r.output_text = response.text;
      r.ga_score = evaluation.score;
      r.judge_reasoning = evaluation.reasoning;
      r.spec_fingerprint = artifact.spec_fingerprint;
      r.created_at = options.run_timestamp;
      if (auto problems = validate_record(r); !problems.empty()) {
        throw ConfigError("record failed validation: " + format_violations(problems));
      }
      records[i] = std::move(r);
      outcome.ok = true;
    } catch (const Error& e) {
      outcome.error_kind = to_string(e.kind());
      outcome.message = e.what();
    } catch (const std::exception& e) {
      outcome.error_kind = "internal";
      outcome.message = e.what();
    }
  };

  auto const workers = static_cast<std::size_t>(
      std::clamp(options.concurrency, 1, 64));
  if (workers == 1 || cells.size() < 2) {
    for (std::size_t i = 0; i < cells.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, cells.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) evaluate(i);
      });
    }
  }

  RunResult result;
  for (auto& r : records) {
    if (r) result.records.push_back(std::move(*r));
  }
  result.outcomes = std::move(outcomes);
  if (result.records.empty()) {
    auto const& first = result.outcomes.front();
    throw RunError("all " + std::to_string(result.outcomes.size()) +
                       " cells failed; first failure (" + first.record_id +
                       "): " + first.message,
                   std::move(result.outcomes));
  }
  return result;
}

std::string serialize_run_report(const std::vector<CellOutcome>& outcomes) {
  std::string out;
  for (auto const& o : outcomes) {
    nlohmann::json obj = {
        {"record_id", o.record_id},
        {"model_id", o.model_id},
        {"language", std::string(to_string(o.language))},
        {"condition", std::string(to_string(o.condition))},
        {"task_id", o.task_id},
        {"status", o.ok ? "ok" : "skipped"},
    };
    if (!o.ok) {
      obj["error_kind"] = o.error_kind;
      obj["message"] = o.message;
    }
    out += obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

}  // namespace pps
