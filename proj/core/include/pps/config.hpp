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

#ifndef PPS_CONFIG_HPP_
#define PPS_CONFIG_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pps/experiment.hpp"
#include "pps/gateway.hpp"

namespace pps {

/// Environment variable naming the config file.
inline constexpr const char* kConfigEnv = "PPS_CONFIG";
/// Config file looked up in the working directory as the last resort.
inline constexpr const char* kLocalConfigName = "pps.json";

/// Tool configuration, read from JSON:
///
///   {
///     "endpoints": [{"model_id": "...", "base_url": "...", "auth_ref": "...",
///                    "adapter": "openai", "wire_model": "...",
///                    "request_timeout_ms": 300000, "max_in_flight": 4}],
///     "mode": "replay", "cache_dir": "cache", "profile": "table-2",
///     "label_dir": "...", "template_dir": "...", "language": "en",
///     "expander": "<model_id>", "judge": "<model_id>"
///   }
///
/// Every key is optional. Relative paths resolve against the file's directory.
struct CliConfig {
  std::vector<ModelEndpoint> endpoints;
  std::optional<GatewayMode> mode;
  std::optional<std::filesystem::path> cache_dir;
  std::string profile = "table-2";
  std::optional<std::filesystem::path> label_dir;
  std::optional<std::filesystem::path> template_dir;
  Language language = Language::kEn;
  std::optional<std::string> expander;
  std::optional<std::string> judge;

  /// Endpoint by model id; throws ConfigError if unknown.
  const ModelEndpoint& endpoint(std::string_view model_id) const;
};

using EnvLookup = std::function<std::optional<std::string>(const char* name)>;

/// The process environment.
std::optional<std::string> process_env(const char* name);

/// Explicit flag, then $PPS_CONFIG, then ./pps.json when it exists.
std::optional<std::filesystem::path> discover_config(
    const std::optional<std::string>& flag, const EnvLookup& env = process_env);

CliConfig parse_config(std::string_view json_text,
                       const std::filesystem::path& base_dir);
CliConfig load_config(const std::filesystem::path& path);

/// Explicit flag, then $PPS_GATEWAY_MODE, then the config, then replay.
/// Throws ConfigError for an unknown mode name.
GatewayMode resolve_mode(const std::optional<std::string>& flag,
                         const CliConfig& config, const EnvLookup& env = process_env);

/// A self-contained experiment description, read from JSON:
///
///   {
///     "endpoints": [...],              // as in CliConfig, merged over it
///     "models": ["<model_id>", ...],
///     "judge": "<model_id>",
///     "languages": ["en"], "conditions": ["A", "C"],
///     "profile": "table-2",
///     "tasks": [{"task_id": "...", "domain": "travel", "language": "en",
///                "what": "..."}],
///     "specs": [{"task_id": "...", "source": "manual", "file": "..."},
///               {"task_id": "...", "source": "ai_expanded", "spec": {...}}],
///     "run_timestamp": "1970-01-01T00:00:00Z",
///     "cache_dir": "cache", "concurrency": 1, "max_output_tokens": 1024
///   }
struct MatrixFile {
  ExperimentMatrix matrix;
  SpecStore specs;
  RunOptions options;
  std::optional<std::filesystem::path> cache_dir;
};

MatrixFile parse_matrix(std::string_view json_text,
                        const std::filesystem::path& base_dir,
                        const CliConfig& config = {});
MatrixFile load_matrix(const std::filesystem::path& path,
                       const CliConfig& config = {});

/// Reads a single task description {"task_id", "domain", "language", "what"}.
TaskDescriptor parse_task(std::string_view json_text);

}  // namespace pps

#endif  // PPS_CONFIG_HPP_
