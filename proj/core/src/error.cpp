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

#include "pps/error.hpp"

#include <utility>

namespace pps {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kFingerprint: return "fingerprint";
    case ErrorKind::kLanguageMismatch: return "language-mismatch";
    case ErrorKind::kRender: return "render";
    case ErrorKind::kExpansion: return "expansion";
    case ErrorKind::kAuth: return "auth";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kCacheMiss: return "cache-miss";
    case ErrorKind::kVerdict: return "verdict";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kStats: return "stats";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kRun: return "run";
  }
  return "unknown";
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (auto const& v : violations) {
    if (v.line != 0) out += "line " + std::to_string(v.line) + ": ";
    out += v.field + ": " + v.message + "\n";
  }
  return out;
}

InvalidSpecError::InvalidSpecError(std::vector<Violation> violations)
    : Error(ErrorKind::kInvalidSpec,
            "invalid spec:\n" + format_violations(violations)),
      violations_(std::move(violations)) {}

SchemaError::SchemaError(std::vector<Violation> violations)
    : Error(ErrorKind::kSchema, "schema error:\n" + format_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace pps
