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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <regex>

#include "pps/error.hpp"
#include "pps/gateway.hpp"

namespace pps {
namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const HttpRequest& request) override {
    static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(request.url, m, kUrl)) {
      throw ConfigError("unsupported endpoint URL: " + request.url);
    }
    httplib::Client client(m[1].str());
    auto const timeout = request.timeout.count() > 0
                             ? request.timeout
                             : std::chrono::milliseconds(std::chrono::minutes(5));
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers headers;
    for (auto const& [name, value] : request.headers) headers.emplace(name, value);
    auto const path = m[2].matched ? m[2].str() : std::string("/");
    auto result = client.Post(path, headers, request.body, "application/json");
    if (!result) {
      throw TransportError("no response from " + m[1].str() + ": " +
                               httplib::to_string(result.error()),
                           0);
    }
    return HttpResponse{result->status, result->body};
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace pps
