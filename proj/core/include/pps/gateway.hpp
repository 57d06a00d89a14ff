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

#ifndef PPS_GATEWAY_HPP_
#define PPS_GATEWAY_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pps {

/// live: every call goes to the network. record: cache hit, else live call
/// and cache write. replay: cache only; a miss is a CacheMissError.
enum class GatewayMode { kLive, kRecord, kReplay };

std::string_view to_string(GatewayMode mode);
std::optional<GatewayMode> parse_gateway_mode(std::string_view name);

/// Environment variable selecting the gateway mode.
inline constexpr const char* kGatewayModeEnv = "PPS_GATEWAY_MODE";

struct ModelEndpoint {
  std::string model_id;  // provider-qualified, e.g. "openai/gpt-4o-2024-08-06"
  std::string base_url;  // e.g. "https://api.openai.com/v1"
  std::string auth_ref;  // name of the environment variable with the API key
  std::chrono::milliseconds request_timeout{std::chrono::minutes(5)};
  int max_in_flight = 4;
  std::string adapter = "openai";  // wire dialect: openai | anthropic
  std::string wire_model;          // model name sent upstream; model_id if empty

  friend bool operator==(const ModelEndpoint&, const ModelEndpoint&) = default;
};

struct ChatRequest {
  ModelEndpoint endpoint;
  std::optional<std::string> system_text;
  std::string user_text;
  double temperature = 0.0;
  std::optional<int> max_output_tokens;
};

struct ChatResponse {
  std::string text;
  std::string finish_reason;
  std::chrono::milliseconds latency{0};
  bool cache_hit = false;
};

/// The exact bytes hashed by cache_key(): compact JSON with sorted keys
///   {"max_output_tokens":<int|null>,"model_id":"...","system_text":<str|null>,
///    "temperature":<number>,"user_text":"..."}
/// Numbers use the shortest round-trip decimal form (0.0 -> "0.0").
std::string cache_key_material(const ChatRequest& request);

/// Lowercase hex SHA-256 of cache_key_material(request).
std::string cache_key(const ChatRequest& request);

/// Anything that can answer a chat request. Gateway is the production
/// implementation; tests substitute scripted fakes.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::chrono::milliseconds timeout{0};
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// POSTs a JSON body. Throws TransportError (status 0) when no response is
/// received.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

/// cpp-httplib backed transport with TLS.
std::shared_ptr<HttpTransport> make_http_transport();

/// Append-only JSONL response cache, one file per model id. An index of
/// key -> response is built when a file is first touched; the first record
/// for a key wins and unparseable lines are skipped. Thread-safe; appends are
/// serialized.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<ChatResponse> find(const ChatRequest& request,
                                   const std::string& key);
  void append(const ChatRequest& request, const std::string& key,
              const ChatResponse& response);

  std::filesystem::path file_for(std::string_view model_id) const;
  /// Lines skipped while indexing, across all files loaded so far.
  std::size_t skipped_lines() const;

 private:
  struct Entry {
    std::string text;
    std::string finish_reason;
  };
  std::map<std::string, Entry>& index_for(const std::string& model_id);

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::map<std::string, Entry>> indexes_;
  std::size_t skipped_ = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{std::chrono::seconds(1)};
  double multiplier = 2.0;
  /// Replaceable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// Looks up a credential by name; defaults to the process environment.
using CredentialLookup =
    std::function<std::optional<std::string>(const std::string& name)>;

struct GatewayOptions {
  GatewayMode mode = GatewayMode::kReplay;
  std::optional<std::filesystem::path> cache_dir;  // required unless live
  std::shared_ptr<HttpTransport> transport;        // defaults to cpp-httplib
  RetryPolicy retry;
  CredentialLookup credentials;
};

/// Uniform chat-completion access with deterministic parameters, bounded
/// retries, per-endpoint in-flight limits and record/replay caching.
///
/// complete() is safe to call concurrently. In live and record modes at most
/// endpoint.max_in_flight network calls per model id run at once. Retries
/// (transport failures, HTTP 429 and 5xx only) re-send the identical request.
class Gateway : public ChatBackend {
 public:
  explicit Gateway(GatewayOptions options);
  ~Gateway() override;

  ChatResponse complete(const ChatRequest& request) override;

  GatewayMode mode() const noexcept { return options_.mode; }

 private:
  class Limiter;
  ChatResponse call_live(const ChatRequest& request);
  Limiter& limiter_for(const ModelEndpoint& endpoint);

  GatewayOptions options_;
  std::unique_ptr<ResponseCache> cache_;
  std::mutex limiters_mu_;
  std::map<std::string, std::unique_ptr<Limiter>> limiters_;
};

}  // namespace pps

#endif  // PPS_GATEWAY_HPP_
