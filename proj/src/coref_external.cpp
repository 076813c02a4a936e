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

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstring>
#include <set>

#include <nlohmann/json.hpp>

#include "misgender/coref.hpp"
#include "misgender/utf8.hpp"

namespace misgender {

namespace {

using Clock = std::chrono::steady_clock;

std::atomic<std::uint64_t> g_request_id{1};

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - Clock::now())
                        .count();
  return left < 0 ? 0 : static_cast<int>(left);
}

// Reads from fd until a newline or the deadline. Throws ResolverUnavailable
// on timeout or EOF before any newline.
std::string read_line(int fd, Clock::time_point deadline) {
  std::string buffer;
  char chunk[4096];
  while (true) {
    struct pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, remaining_ms(deadline));
    if (ready == 0) throw ResolverUnavailable("coref adapter timed out");
    if (ready < 0) throw ResolverUnavailable("coref adapter poll failed");
    const ssize_t n = ::read(fd, chunk, sizeof(chunk));
    if (n <= 0) throw ResolverUnavailable("coref adapter closed the stream");
    buffer.append(chunk, static_cast<std::size_t>(n));
    const auto newline = buffer.find('\n');
    if (newline != std::string::npos) return buffer.substr(0, newline);
    if (buffer.size() > (1u << 20)) {
      throw ProtocolError("coref adapter response exceeds 1 MiB without newline");
    }
  }
}

void write_all(int fd, std::string_view data) {
  // A crashed adapter must surface as ResolverUnavailable, not SIGPIPE.
  static const bool sigpipe_ignored = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n <= 0) throw ResolverUnavailable("coref adapter pipe write failed");
    off += static_cast<std::size_t>(n);
  }
}

std::string exchange_subprocess(const std::string& command,
                                const std::string& request,
                                std::chrono::milliseconds timeout) {
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
    throw ResolverUnavailable("cannot create adapter pipes");
  }
  const pid_t pid = ::fork();
  if (pid < 0) throw ResolverUnavailable("cannot fork adapter process");
  if (pid == 0) {
    // Own process group, so the whole adapter tree can be torn down and no
    // descendant keeps our caller's inherited fds alive past the timeout.
    ::setpgid(0, 0);
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
    _exit(127);
  }
  ::setpgid(pid, pid);
  ::close(to_child[0]);
  ::close(from_child[1]);

  const auto deadline = Clock::now() + timeout;
  std::string line;
  try {
    write_all(to_child[1], request);
    ::close(to_child[1]);
    line = read_line(from_child[0], deadline);
  } catch (...) {
    ::close(from_child[0]);
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, nullptr, 0);
    throw;
  }
  ::close(from_child[0]);
  ::kill(-pid, SIGKILL);
  ::waitpid(pid, nullptr, 0);
  return line;
}

std::string exchange_socket(const std::string& host, int port,
                            const std::string& request,
                            std::chrono::milliseconds timeout) {
  struct addrinfo hints {};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  struct addrinfo* result = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints,
                    &result) != 0 ||
      result == nullptr) {
    throw ResolverUnavailable("cannot resolve adapter host " + host);
  }
  const int fd = ::socket(result->ai_family, SOCK_STREAM, 0);
  if (fd < 0) {
    ::freeaddrinfo(result);
    throw ResolverUnavailable("cannot open adapter socket");
  }
  const auto deadline = Clock::now() + timeout;
  ::fcntl(fd, F_SETFL, O_NONBLOCK);
  const int rc = ::connect(fd, result->ai_addr, result->ai_addrlen);
  ::freeaddrinfo(result);
  if (rc != 0 && errno == EINPROGRESS) {
    struct pollfd pfd{fd, POLLOUT, 0};
    if (::poll(&pfd, 1, remaining_ms(deadline)) <= 0) {
      ::close(fd);
      throw ResolverUnavailable("adapter connect timed out");
    }
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) {
      ::close(fd);
      throw ResolverUnavailable("adapter connect failed");
    }
  } else if (rc != 0) {
    ::close(fd);
    throw ResolverUnavailable("adapter connect failed");
  }
  std::string line;
  try {
    write_all(fd, request);
    line = read_line(fd, deadline);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  return line;
}

MentionKind classify_span(std::string_view surface) {
  static const std::set<std::string, std::less<>> kPronouns = {
      "she", "her", "hers", "herself", "he",   "him",  "his",  "himself",
      "they", "them", "their", "theirs", "themselves"};
  const std::string folded = utf8::fold_utf8(surface);
  for (const Token& token : tokenize(folded)) {
    if (kPronouns.count(token.folded)) return MentionKind::kPronoun;
  }
  const std::u32string cps = utf8::decode(surface);
  if (!cps.empty() && utf8::is_upper(cps.front())) return MentionKind::kName;
  return MentionKind::kNominal;
}

}  // namespace

std::string make_adapter_request(std::uint64_t id, std::string_view text) {
  nlohmann::ordered_json json;
  json["id"] = id;
  json["text"] = std::string(text);
  return json.dump() + "\n";
}

CorefClusters parse_adapter_response(std::string_view line,
                                     std::uint64_t expected_id,
                                     std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("adapter response is not JSON: ") + e.what());
  }
  if (!json.is_object() || !json.contains("id") || !json.contains("clusters")) {
    throw ProtocolError("adapter response missing id or clusters");
  }
  if (json["id"].get<std::uint64_t>() != expected_id) {
    throw ProtocolError("adapter response id does not match request");
  }
  const std::u32string cps = utf8::decode(text);
  CorefClusters result;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& raw_cluster : json["clusters"]) {
    if (!raw_cluster.is_array()) throw ProtocolError("cluster is not an array");
    std::vector<Mention> cluster;
    for (const auto& raw_span : raw_cluster) {
      if (!raw_span.is_array() || raw_span.size() != 2 ||
          !raw_span[0].is_number_unsigned() || !raw_span[1].is_number_unsigned()) {
        throw ProtocolError("span must be [start, end] with unsigned offsets");
      }
      const auto begin = raw_span[0].get<std::uint64_t>();
      const auto end = raw_span[1].get<std::uint64_t>();
      if (begin >= end || end > cps.size()) {
        throw ProtocolError("span [" + std::to_string(begin) + ", " +
                            std::to_string(end) + ") out of text bounds");
      }
      if (!seen.insert({begin, end}).second) {
        throw ProtocolError("duplicate mention span across clusters");
      }
      const std::string surface = utf8::encode(cps.substr(begin, end - begin));
      cluster.push_back({{static_cast<std::size_t>(begin),
                          static_cast<std::size_t>(end)},
                         classify_span(surface)});
    }
    if (!cluster.empty()) result.clusters.push_back(std::move(cluster));
  }
  return result;
}

CorefClusters resolve_external(std::string_view text,
                               const AdapterConfig& config) {
  const std::uint64_t id = g_request_id.fetch_add(1);
  const std::string request = make_adapter_request(id, text);
  std::string line;
  if (!config.command.empty()) {
    line = exchange_subprocess(config.command, request, config.timeout);
  } else if (!config.host.empty() && config.port > 0) {
    line = exchange_socket(config.host, config.port, request, config.timeout);
  } else {
    throw ConfigError("adapter config needs a command or host+port");
  }
  return parse_adapter_response(line, id, text);
}

}  // namespace misgender
