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

#ifndef PPS_TOOLS_COMMANDS_HPP_
#define PPS_TOOLS_COMMANDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pps/error.hpp"

namespace pps::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitGateway = 3;
inline constexpr int kExitCacheMiss = 4;
inline constexpr int kExitIo = 5;
inline constexpr int kExitConfig = 6;
inline constexpr int kExitFailure = 7;

int exit_code_for(ErrorKind kind);

struct Global {
  std::optional<std::string> config;
  std::optional<std::string> mode;
  std::optional<std::string> label_dir;
  std::optional<std::string> template_dir;
};

struct ValidateArgs {
  std::string spec;
  bool verify = false;
};

struct FingerprintArgs {
  std::string spec;
  bool seal = false;
  std::optional<std::string> output;
};

struct RenderArgs {
  std::optional<std::string> spec;
  std::optional<std::string> task;
  std::string condition;
  std::optional<std::string> profile;
};

struct TranspileArgs {
  std::string spec;
  std::string to;
  std::optional<std::string> profile;
  std::string format = "text";
};

struct ExpandArgs {
  std::string what;
  std::optional<std::string> language;
  std::optional<std::string> model;
  int attempts = 3;
  std::optional<std::string> created_at;
  std::optional<std::string> instruction_id;
  std::optional<std::string> output;
};

struct RunArgs {
  std::string matrix;
  std::string output;
  std::optional<std::string> run_report;
};

struct JudgeArgs {
  std::optional<std::string> task;
  std::optional<std::string> task_file;
  std::string output_file;
  std::optional<std::string> language;
  std::optional<std::string> model;
};

struct IngestArgs {
  std::string input;
  std::optional<std::string> mapping;
  std::optional<std::string> output;
};

struct ReportArgs {
  std::optional<std::string> records;
  std::optional<std::string> cells;
  std::optional<std::string> mapping;
  std::string format = "markdown";
  std::vector<std::string> tables;
  std::vector<std::string> tests;
  double delta = 0.2;
  std::optional<std::string> output;
};

int cmd_validate(const Global& g, const ValidateArgs& a);
int cmd_fingerprint(const Global& g, const FingerprintArgs& a);
int cmd_render(const Global& g, const RenderArgs& a);
int cmd_transpile(const Global& g, const TranspileArgs& a);
int cmd_expand(const Global& g, const ExpandArgs& a);
int cmd_run(const Global& g, const RunArgs& a);
int cmd_judge(const Global& g, const JudgeArgs& a);
int cmd_ingest(const Global& g, const IngestArgs& a);
int cmd_report(const Global& g, const ReportArgs& a);

}  // namespace pps::cli

#endif  // PPS_TOOLS_COMMANDS_HPP_
