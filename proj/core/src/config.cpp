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

#include "pps/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "pps/error.hpp"
#include "text_util.hpp"

namespace pps {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), e.byte);
  }
}

// Typed field access with ConfigError on a type mismatch.
template <typename T>
std::optional<T> field(const json& obj, const char* name, std::string_view where) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + ": field '" + name + "' has the wrong type");
  }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto const& [key, value] : obj.items()) {
    if (!ok.contains(key)) {
      throw ConfigError(std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

ModelEndpoint parse_endpoint(const json& obj) {
  check_keys(obj, {"model_id", "base_url", "auth_ref", "adapter", "wire_model",
                   "request_timeout_ms", "max_in_flight"},
             "endpoint");
  ModelEndpoint ep;
  ep.model_id = field<std::string>(obj, "model_id", "endpoint").value_or("");
  if (ep.model_id.empty()) throw ConfigError("endpoint: model_id is required");
  std::string const where = "endpoint " + ep.model_id;
  ep.base_url = field<std::string>(obj, "base_url", where).value_or("");
  ep.auth_ref = field<std::string>(obj, "auth_ref", where).value_or("");
  ep.adapter = field<std::string>(obj, "adapter", where).value_or("openai");
  if (ep.adapter != "openai" && ep.adapter != "anthropic") {
    throw ConfigError(where + ": adapter must be openai or anthropic");
  }
  ep.wire_model = field<std::string>(obj, "wire_model", where).value_or("");
  if (auto t = field<long long>(obj, "request_timeout_ms", where)) {
    if (*t <= 0) throw ConfigError(where + ": request_timeout_ms must be positive");
    ep.request_timeout = std::chrono::milliseconds(*t);
  }
  if (auto m = field<int>(obj, "max_in_flight", where)) {
    if (*m < 1) throw ConfigError(where + ": max_in_flight must be at least 1");
    ep.max_in_flight = *m;
  }
  return ep;
}

std::vector<ModelEndpoint> parse_endpoints(const json& doc, std::string_view where) {
  std::vector<ModelEndpoint> out;
  auto it = doc.find("endpoints");
  if (it == doc.end()) return out;
  if (!it->is_array()) throw ConfigError(std::string(where) + ": endpoints must be a list");
  std::set<std::string> ids;
  for (auto const& e : *it) {
    out.push_back(parse_endpoint(e));
    if (!ids.insert(out.back().model_id).second) {
      throw ConfigError(std::string(where) + ": endpoint " + out.back().model_id +
                        " is defined twice");
    }
  }
  return out;
}

Language language_of(const std::string& code, std::string_view where) {
  auto l = parse_language(code);
  if (!l) throw ConfigError(std::string(where) + ": unknown language '" + code + "'");
  return *l;
}

TaskDescriptor task_from_json(const json& obj) {
  check_keys(obj, {"task_id", "domain", "language", "what"}, "task");
  TaskDescriptor t;
  t.task_id = field<std::string>(obj, "task_id", "task").value_or("");
  if (t.task_id.empty()) throw ConfigError("task: task_id is required");
  std::string const where = "task " + t.task_id;
  auto const domain = field<std::string>(obj, "domain", where).value_or("");
  auto d = parse_domain(domain);
  if (!d) throw ConfigError(where + ": unknown domain '" + domain + "'");
  t.domain = *d;
  t.language = language_of(field<std::string>(obj, "language", where).value_or(""), where);
  t.what_sentence = field<std::string>(obj, "what", where).value_or("");
  if (internal::trim(t.what_sentence).empty()) {
    throw ConfigError(where + ": what is required");
  }
  return t;
}

}  // namespace

const ModelEndpoint& CliConfig::endpoint(std::string_view model_id) const {
  for (auto const& e : endpoints) {
    if (e.model_id == model_id) return e;
  }
  throw ConfigError("no endpoint is configured for model " + std::string(model_id));
}

std::optional<std::string> process_env(const char* name) {
  if (auto const* v = std::getenv(name); v != nullptr && *v != '\0') {
    return std::string(v);
  }
  return std::nullopt;
}

std::optional<fs::path> discover_config(const std::optional<std::string>& flag,
                                        const EnvLookup& env) {
  if (flag) return fs::path(*flag);
  if (auto v = env(kConfigEnv)) return fs::path(*v);
  if (fs::exists(kLocalConfigName)) return fs::path(kLocalConfigName);
  return std::nullopt;
}

CliConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  auto const doc = parse_json(json_text, "config");
  check_keys(doc, {"endpoints", "mode", "cache_dir", "profile", "label_dir",
                   "template_dir", "language", "expander", "judge"},
             "config");
  CliConfig c;
  c.endpoints = parse_endpoints(doc, "config");
  if (auto m = field<std::string>(doc, "mode", "config")) {
    c.mode = parse_gateway_mode(*m);
    if (!c.mode) throw ConfigError("config: unknown mode '" + *m + "'");
  }
  if (auto p = field<std::string>(doc, "cache_dir", "config")) c.cache_dir = resolve(base_dir, *p);
  if (auto p = field<std::string>(doc, "label_dir", "config")) c.label_dir = resolve(base_dir, *p);
  if (auto p = field<std::string>(doc, "template_dir", "config")) {
    c.template_dir = resolve(base_dir, *p);
  }
  for (auto const* dir : {&c.label_dir, &c.template_dir}) {
    if (*dir && !fs::is_directory(**dir)) {
      throw ConfigError("config: directory " + (*dir)->string() + " does not exist");
    }
  }
  if (auto p = field<std::string>(doc, "profile", "config")) c.profile = *p;
  if (auto l = field<std::string>(doc, "language", "config")) c.language = language_of(*l, "config");
  c.expander = field<std::string>(doc, "expander", "config");
  c.judge = field<std::string>(doc, "judge", "config");
  return c;
}

CliConfig load_config(const fs::path& path) {
  return parse_config(internal::read_file(path), path.parent_path());
}

GatewayMode resolve_mode(const std::optional<std::string>& flag, const CliConfig& config,
                         const EnvLookup& env) {
  auto parse = [](const std::string& name, std::string_view source) {
    auto m = parse_gateway_mode(name);
    if (!m) {
      throw ConfigError(std::string(source) + ": unknown gateway mode '" + name +
                        "' (expected live, record or replay)");
    }
    return *m;
  };
  if (flag) return parse(*flag, "--mode");
  if (auto v = env(kGatewayModeEnv)) return parse(*v, kGatewayModeEnv);
  if (config.mode) return *config.mode;
  return GatewayMode::kReplay;
}

MatrixFile parse_matrix(std::string_view json_text, const fs::path& base_dir,
                        const CliConfig& config) {
  auto const doc = parse_json(json_text, "matrix");
  check_keys(doc, {"endpoints", "models", "judge", "languages", "conditions", "profile",
                   "tasks", "specs", "run_timestamp", "cache_dir", "concurrency",
                   "max_output_tokens"},
             "matrix");
  CliConfig merged = config;
  for (auto& ep : parse_endpoints(doc, "matrix")) {
    std::erase_if(merged.endpoints,
                  [&](const ModelEndpoint& e) { return e.model_id == ep.model_id; });
    merged.endpoints.push_back(std::move(ep));
  }

  MatrixFile out;
  auto& m = out.matrix;
  for (auto const& id : field<std::vector<std::string>>(doc, "models", "matrix").value_or(
           std::vector<std::string>{})) {
    m.models.push_back(merged.endpoint(id));
  }
  for (auto const& code : field<std::vector<std::string>>(doc, "languages", "matrix")
                              .value_or(std::vector<std::string>{})) {
    m.languages.push_back(language_of(code, "matrix"));
  }
  for (auto const& name : field<std::vector<std::string>>(doc, "conditions", "matrix")
                              .value_or(std::vector<std::string>{})) {
    auto c = parse_condition(name);
    if (!c) throw ConfigError("matrix: unknown condition '" + name + "'");
    m.conditions.push_back(*c);
  }
  auto const profile = field<std::string>(doc, "profile", "matrix").value_or(config.profile);
  auto const names = builtin_profile_names();
  bool const builtin = std::find(names.begin(), names.end(), profile) != names.end();
  m.profile = resolve_profile(builtin ? profile : resolve(base_dir, profile).string());

  if (auto it = doc.find("tasks"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("matrix: tasks must be a list");
    for (auto const& t : *it) m.tasks.push_back(task_from_json(t));
  }

  if (auto it = doc.find("specs"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("matrix: specs must be a list");
    for (auto const& entry : *it) {
      check_keys(entry, {"task_id", "source", "file", "spec"}, "matrix spec");
      auto const task_id = field<std::string>(entry, "task_id", "matrix spec").value_or("");
      auto const source_name =
          field<std::string>(entry, "source", "matrix spec").value_or("manual");
      auto source = parse_spec_source(source_name);
      if (task_id.empty() || !source) {
        throw ConfigError("matrix spec: needs task_id and source manual|ai_expanded");
      }
      std::string text;
      if (auto file = field<std::string>(entry, "file", "matrix spec")) {
        text = internal::read_file(resolve(base_dir, *file));
      } else if (auto inline_spec = entry.find("spec"); inline_spec != entry.end()) {
        text = inline_spec->dump();
      } else {
        throw ConfigError("matrix spec for " + task_id + ": needs file or spec");
      }
      auto spec = parse_spec(text);
      SpecKey key{task_id, spec.language, *source};
      if (!out.specs.emplace(key, std::move(spec)).second) {
        throw ConfigError("matrix: duplicate spec for task " + task_id);
      }
    }
  }

  auto judge_id = field<std::string>(doc, "judge", "matrix");
  if (!judge_id) judge_id = config.judge;
  if (!judge_id) throw ConfigError("matrix: judge is required");
  out.options.judge = merged.endpoint(*judge_id);
  out.options.run_timestamp = field<std::string>(doc, "run_timestamp", "matrix")
                                  .value_or(out.options.run_timestamp);
  if (!internal::is_rfc3339(out.options.run_timestamp)) {
    throw ConfigError("matrix: run_timestamp is not an RFC 3339 timestamp");
  }
  out.options.concurrency = field<int>(doc, "concurrency", "matrix").value_or(1);
  if (out.options.concurrency < 1) throw ConfigError("matrix: concurrency must be >= 1");
  out.options.max_output_tokens = field<int>(doc, "max_output_tokens", "matrix");
  out.options.label_dir = config.label_dir;
  out.options.template_dir = config.template_dir;
  if (auto p = field<std::string>(doc, "cache_dir", "matrix")) {
    out.cache_dir = resolve(base_dir, *p);
  } else {
    out.cache_dir = config.cache_dir;
  }

  if (auto problems = validate_matrix(m); !problems.empty()) {
    throw ConfigError("matrix:\n" + format_violations(problems));
  }
  return out;
}

MatrixFile load_matrix(const fs::path& path, const CliConfig& config) {
  return parse_matrix(internal::read_file(path), path.parent_path(), config);
}

TaskDescriptor parse_task(std::string_view json_text) {
  return task_from_json(parse_json(json_text, "task"));
}

}  // namespace pps
