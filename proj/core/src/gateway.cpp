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

#include "pps/gateway.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "pps/error.hpp"
#include "pps/sha256.hpp"
#include "pps/unicode.hpp"

namespace pps {
namespace {

using nlohmann::json;

constexpr int kDefaultAnthropicMaxTokens = 8192;

json nullable(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

std::string wire_model(const ModelEndpoint& endpoint) {
  return endpoint.wire_model.empty() ? endpoint.model_id : endpoint.wire_model;
}

std::string join_url(std::string base, std::string_view path) {
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + std::string(path);
}

// Short, printable excerpt of an upstream body for error messages.
std::string excerpt(std::string_view body) {
  auto prefix = unicode::take_scalars(body, 200);
  return prefix.truncated ? prefix.text + "..." : prefix.text;
}

HttpRequest build_http_request(const ChatRequest& req, const std::string& key) {
  auto const& ep = req.endpoint;
  HttpRequest http;
  http.timeout = ep.request_timeout;
  json body;
  body["model"] = wire_model(ep);
  body["temperature"] = req.temperature;
  if (ep.adapter == "openai") {
    http.url = join_url(ep.base_url, "/chat/completions");
    http.headers.emplace_back("Authorization", "Bearer " + key);
    json messages = json::array();
    if (req.system_text) {
      messages.push_back({{"role", "system"}, {"content", *req.system_text}});
    }
    messages.push_back({{"role", "user"}, {"content", req.user_text}});
    body["messages"] = std::move(messages);
    if (req.max_output_tokens) body["max_tokens"] = *req.max_output_tokens;
  } else if (ep.adapter == "anthropic") {
    http.url = join_url(ep.base_url, "/messages");
    http.headers.emplace_back("x-api-key", key);
    http.headers.emplace_back("anthropic-version", "2023-06-01");
    if (req.system_text) body["system"] = *req.system_text;
    body["messages"] =
        json::array({{{"role", "user"}, {"content", req.user_text}}});
    body["max_tokens"] = req.max_output_tokens.value_or(kDefaultAnthropicMaxTokens);
  } else {
    throw ConfigError("endpoint " + ep.model_id + ": unknown adapter '" +
                      ep.adapter + "' (expected openai or anthropic)");
  }
  http.body = body.dump(-1, ' ', false, json::error_handler_t::replace);
  return http;
}

ChatResponse parse_http_response(const ModelEndpoint& ep, std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error&) {
    throw TransportError(ep.model_id + ": response is not JSON: " + excerpt(body),
                         200);
  }
  ChatResponse out;
  try {
    if (ep.adapter == "openai") {
      auto const& choice = doc.at("choices").at(0);
      auto const& content = choice.at("message").at("content");
      out.text = content.is_string() ? content.get<std::string>() : std::string();
      auto const& reason = choice.value("finish_reason", json());
      out.finish_reason = reason.is_string() ? reason.get<std::string>() : "stop";
    } else {
      for (auto const& part : doc.at("content")) {
        if (part.value("type", "") == "text") out.text += part.at("text").get<std::string>();
      }
      auto const reason = doc.value("stop_reason", std::string("end_turn"));
      out.finish_reason = reason == "end_turn"     ? "stop"
                          : reason == "max_tokens" ? "length"
                                                   : reason;
    }
  } catch (const json::exception&) {
    throw TransportError(
        ep.model_id + ": unexpected response shape: " + excerpt(body), 200);
  }
  if (out.finish_reason == "stop" && out.text.empty()) {
    throw TransportError(ep.model_id + ": completed response has no text", 200);
  }
  return out;
}

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

std::string sanitize_file_stem(std::string_view model_id) {
  std::string out;
  for (char c : model_id) {
    bool const keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
    out.push_back(keep ? c : '_');
  }
  return out.empty() ? "_" : out;
}

}  // namespace

std::string_view to_string(GatewayMode mode) {
  switch (mode) {
    case GatewayMode::kLive: return "live";
    case GatewayMode::kRecord: return "record";
    case GatewayMode::kReplay: return "replay";
  }
  return "replay";
}

std::optional<GatewayMode> parse_gateway_mode(std::string_view name) {
  if (name == "live") return GatewayMode::kLive;
  if (name == "record") return GatewayMode::kRecord;
  if (name == "replay") return GatewayMode::kReplay;
  return std::nullopt;
}

std::string cache_key_material(const ChatRequest& request) {
  json obj = json::object();
  obj["model_id"] = request.endpoint.model_id;
  obj["system_text"] = nullable(request.system_text);
  obj["user_text"] = request.user_text;
  obj["temperature"] = request.temperature;
  obj["max_output_tokens"] =
      request.max_output_tokens ? json(*request.max_output_tokens) : json(nullptr);
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string cache_key(const ChatRequest& request) {
  return sha256_hex(cache_key_material(request));
}

// ---------------------------------------------------------------------------
// ResponseCache

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResponseCache::file_for(std::string_view model_id) const {
  return dir_ / (sanitize_file_stem(model_id) + ".jsonl");
}

std::size_t ResponseCache::skipped_lines() const {
  std::lock_guard lock(mu_);
  return skipped_;
}

std::map<std::string, ResponseCache::Entry>& ResponseCache::index_for(
    const std::string& model_id) {
  auto [it, inserted] = indexes_.try_emplace(model_id);
  if (!inserted) return it->second;
  std::ifstream in(file_for(model_id), std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto const doc = json::parse(line);
      auto const& response = doc.at("response");
      it->second.try_emplace(doc.at("key").get<std::string>(),
                             Entry{response.at("text").get<std::string>(),
                                   response.at("finish_reason").get<std::string>()});
    } catch (const json::exception&) {
      ++skipped_;
    }
  }
  return it->second;
}

std::optional<ChatResponse> ResponseCache::find(const ChatRequest& request,
                                                const std::string& key) {
  std::lock_guard lock(mu_);
  auto const& index = index_for(request.endpoint.model_id);
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  ChatResponse out;
  out.text = it->second.text;
  out.finish_reason = it->second.finish_reason;
  out.cache_hit = true;
  return out;
}

void ResponseCache::append(const ChatRequest& request, const std::string& key,
                           const ChatResponse& response) {
  std::lock_guard lock(mu_);
  auto& index = index_for(request.endpoint.model_id);
  if (index.contains(key)) return;

  json record = json::object();
  record["key"] = key;
  record["model_id"] = request.endpoint.model_id;
  record["request"] = {{"system_text", nullable(request.system_text)},
                       {"user_text", request.user_text},
                       {"temperature", request.temperature},
                       {"max_output_tokens", request.max_output_tokens
                                                 ? json(*request.max_output_tokens)
                                                 : json(nullptr)}};
  record["response"] = {{"text", response.text},
                        {"finish_reason", response.finish_reason}};

  std::filesystem::create_directories(dir_);
  auto const path = file_for(request.endpoint.model_id);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open cache file " + path.string());
  out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  out.flush();
  if (!out) throw IoError("error writing cache file " + path.string());
  index.emplace(key, Entry{response.text, response.finish_reason});
}

// ---------------------------------------------------------------------------
// Gateway

class Gateway::Limiter {
 public:
  explicit Limiter(int capacity) : capacity_(std::max(1, capacity)) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < capacity_; });
    ++in_flight_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int capacity_;
  int in_flight_ = 0;
};

Gateway::Gateway(GatewayOptions options) : options_(std::move(options)) {
  if (options_.mode != GatewayMode::kLive) {
    if (!options_.cache_dir) {
      throw ConfigError(std::string(to_string(options_.mode)) +
                        " mode requires a cache directory");
    }
    cache_ = std::make_unique<ResponseCache>(*options_.cache_dir);
  }
  if (!options_.transport && options_.mode != GatewayMode::kReplay) {
    options_.transport = make_http_transport();
  }
  if (!options_.retry.sleep) {
    options_.retry.sleep = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
  if (!options_.credentials) {
    options_.credentials = [](const std::string& name) -> std::optional<std::string> {
      if (auto const* v = std::getenv(name.c_str()); v != nullptr && *v != '\0') {
        return std::string(v);
      }
      return std::nullopt;
    };
  }
}

Gateway::~Gateway() = default;

Gateway::Limiter& Gateway::limiter_for(const ModelEndpoint& endpoint) {
  std::lock_guard lock(limiters_mu_);
  auto& slot = limiters_[endpoint.model_id];
  if (!slot) slot = std::make_unique<Limiter>(endpoint.max_in_flight);
  return *slot;
}

ChatResponse Gateway::complete(const ChatRequest& request) {
  if (request.endpoint.model_id.empty()) {
    throw ConfigError("chat request has no model id");
  }
  if (request.user_text.empty()) {
    throw ConfigError("chat request has empty user text");
  }
  if (!(request.temperature >= 0.0)) {
    throw ConfigError("temperature must be >= 0");
  }
  if (options_.mode == GatewayMode::kLive) return call_live(request);

  auto const key = cache_key(request);
  if (auto hit = cache_->find(request, key)) return *hit;
  if (options_.mode == GatewayMode::kReplay) throw CacheMissError(key);

  auto response = call_live(request);
  cache_->append(request, key, response);
  return response;
}

ChatResponse Gateway::call_live(const ChatRequest& request) {
  auto const& ep = request.endpoint;
  if (ep.base_url.empty()) throw ConfigError("endpoint " + ep.model_id + " has no base_url");
  if (ep.auth_ref.empty()) throw AuthError("endpoint " + ep.model_id + " has no auth_ref");
  auto const credential = options_.credentials(ep.auth_ref);
  if (!credential) {
    throw AuthError("credential variable " + ep.auth_ref + " for " + ep.model_id +
                    " is not set");
  }
  auto const http = build_http_request(request, *credential);

  auto& limiter = limiter_for(ep);
  auto const max_attempts = std::max(1, options_.retry.max_attempts);
  auto backoff = options_.retry.initial_backoff;
  int last_status = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto const start = std::chrono::steady_clock::now();
    HttpResponse reply;
    limiter.acquire();
    try {
      reply = options_.transport->post(http);
    } catch (const TransportError& e) {
      reply.status = 0;
      last_error = e.what();
    }
    limiter.release();

    if (reply.status >= 200 && reply.status < 300) {
      auto response = parse_http_response(ep, reply.body);
      response.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      return response;
    }
    last_status = reply.status;
    if (reply.status == 401 || reply.status == 403) {
      throw AuthError(ep.model_id + ": upstream rejected the credential (HTTP " +
                      std::to_string(reply.status) + ")");
    }
    if (reply.status != 0) {
      last_error = "HTTP " + std::to_string(reply.status) + ": " + excerpt(reply.body);
    }
    if (!retryable(reply.status)) break;
    if (attempt < max_attempts) {
      options_.retry.sleep(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(
          std::llround(static_cast<double>(backoff.count()) * options_.retry.multiplier)));
    }
  }
  throw TransportError(ep.model_id + ": request failed: " + last_error, last_status);
}

}  // namespace pps
