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

#ifndef PPS_ERROR_HPP_
#define PPS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pps {

/// Coarse failure class. The CLI maps each class to a distinct exit code.
enum class ErrorKind {
  kInvalidSpec,
  kParse,
  kSchema,
  kFingerprint,
  kLanguageMismatch,
  kRender,
  kExpansion,
  kAuth,
  kTransport,
  kCacheMiss,
  kVerdict,
  kIo,
  kStats,
  kConfig,
  kRun,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A single field-level problem. Shared by spec validation, schema checks and
/// record ingestion.
struct Violation {
  std::string field;
  std::string message;
  std::size_t line = 0;  // 1-based source line, 0 when not file-backed

  friend bool operator==(const Violation&, const Violation&) = default;
};

class InvalidSpecError : public Error {
 public:
  explicit InvalidSpecError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

/// Syntax error in serialized input. `offset` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(ErrorKind::kParse, message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed input that does not match the closed schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

class FingerprintError : public Error {
 public:
  explicit FingerprintError(const std::string& message)
      : Error(ErrorKind::kFingerprint, message) {}
};

class LanguageMismatchError : public Error {
 public:
  explicit LanguageMismatchError(const std::string& message)
      : Error(ErrorKind::kLanguageMismatch, message) {}
};

class RenderError : public Error {
 public:
  explicit RenderError(const std::string& message)
      : Error(ErrorKind::kRender, message) {}
};

class ExpansionError : public Error {
 public:
  enum class Reason { kMalformed, kIncomplete, kWhatDeletion, kInvalidResult };
  ExpansionError(Reason reason, const std::string& message)
      : Error(ErrorKind::kExpansion, message), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class AuthError : public Error {
 public:
  explicit AuthError(const std::string& message)
      : Error(ErrorKind::kAuth, message) {}
};

class TransportError : public Error {
 public:
  TransportError(const std::string& message, int status = 0)
      : Error(ErrorKind::kTransport, message), status_(status) {}
  /// HTTP status of the last attempt, 0 if no response was received.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class CacheMissError : public Error {
 public:
  explicit CacheMissError(const std::string& key)
      : Error(ErrorKind::kCacheMiss, "replay cache has no entry for key " + key),
        key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class MalformedVerdictError : public Error {
 public:
  explicit MalformedVerdictError(const std::string& message)
      : Error(ErrorKind::kVerdict, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::kIo, message) {}
};

class StatsError : public Error {
 public:
  explicit StatsError(const std::string& message)
      : Error(ErrorKind::kStats, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::kConfig, message) {}
};

/// Joins violations as "field: message" lines.
std::string format_violations(const std::vector<Violation>& violations);

}  // namespace pps

#endif  // PPS_ERROR_HPP_
