// Copyright 2026 The Misgender Tools Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// HTTP transport half of the completion backend. Kept in its own
// translation unit so only this file pays for the httplib include.

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "misgender/baselines.hpp"

namespace misgender {

namespace {

struct ParsedEndpoint {
  std::string host;
  int port = 80;
  std::string path = "/";
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  constexpr std::string_view kHttp = "http://";
  if (endpoint.rfind(kHttp, 0) != 0) {
    throw ConfigError("backend endpoint must be http:// (got: " + endpoint + ")");
  }
  ParsedEndpoint parsed;
  std::string rest = endpoint.substr(kHttp.size());
  const auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  if (slash != std::string::npos) parsed.path = rest.substr(slash);
  const auto colon = authority.find(':');
  if (colon == std::string::npos) {
    parsed.host = authority;
  } else {
    parsed.host = authority.substr(0, colon);
    parsed.port = std::atoi(authority.c_str() + colon + 1);
  }
  if (parsed.host.empty() || parsed.port <= 0) {
    throw ConfigError("malformed backend endpoint: " + endpoint);
  }
  return parsed;
}

std::string extract_completion(const std::string& body) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    return body;  // plain-text backends
  }
  if (json.contains("choices") && json["choices"].is_array() &&
      !json["choices"].empty()) {
    const auto& choice = json["choices"][0];
    if (choice.contains("text")) return choice["text"].get<std::string>();
    if (choice.contains("message") && choice["message"].contains("content")) {
      return choice["message"]["content"].get<std::string>();
    }
  }
  if (json.contains("completion")) return json["completion"].get<std::string>();
  return body;
}

}  // namespace

std::string CompletionBackend::complete(const std::string& prompt) const {
  const std::string fingerprint = prompt_fingerprint(prompt);
  if (auto it = replay_.find(fingerprint); it != replay_.end()) {
    return it->second;
  }
  if (config_.replay_only || config_.endpoint.empty()) {
    throw BackendError("replay fixture miss for fingerprint " + fingerprint);
  }

  const ParsedEndpoint endpoint = parse_endpoint(config_.endpoint);
  nlohmann::ordered_json body;
  body["model"] = config_.model;
  body["prompt"] = prompt;
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str());
      key != nullptr && key[0] != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(std::min(250 * attempt, 2000)));
    }
    httplib::Client client(endpoint.host, endpoint.port);
    client.set_connection_timeout(seconds.count(), 0);
    client.set_read_timeout(seconds.count(), 0);
    client.set_write_timeout(seconds.count(), 0);
    auto response =
        client.Post(endpoint.path, headers, payload, "application/json");
    if (!response) {
      last_error = "backend unavailable: " + httplib::to_string(response.error());
      continue;
    }
    if (response->status < 200 || response->status >= 300) {
      last_error = "backend HTTP " + std::to_string(response->status);
      if (response->status >= 400 && response->status < 500 &&
          response->status != 429) {
        break;  // client errors do not retry
      }
      continue;
    }
    return extract_completion(response->body);
  }
  throw BackendError(last_error.empty() ? "backend request failed" : last_error);
}

}  // namespace misgender
