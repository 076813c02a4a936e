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
// Coreference clustering: a deterministic heuristic resolver plus a wire
// protocol for external neural resolvers. The heuristic is a documented
// lower bound; neither resolver is treated as ground truth downstream.

#ifndef MISGENDER_COREF_HPP_
#define MISGENDER_COREF_HPP_

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/engine.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

enum class MentionKind { kName, kPronoun, kNominal };

struct Mention {
  Span span;
  MentionKind kind = MentionKind::kName;

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct CorefClusters {
  std::vector<std::vector<Mention>> clusters;
};

// Deterministic heuristic resolver:
//   - name mentions: maximal runs of capitalized words, minus pronouns and
//     a closed function-word stoplist;
//   - pronoun mentions: pronoun-table hits (including contracted forms);
//   - predicate nominals: a gendered-term token shortly after a copula,
//     linked to the copula's nearest preceding mention;
//   - a pronoun links to the first name mention before it in its sentence,
//     else the first name mention of the nearest preceding sentence;
//   - name mentions matching profile name or deadname tokens merge into
//     one subject cluster.
CorefClusters resolve_heuristic(const EngineContext& ctx, std::string_view text,
                                const std::vector<Token>& tokens,
                                const GenderProfile& profile);

// Union of the mention spans of every cluster containing a mention whose
// surface matches the profile's name tokens or deadname triggers,
// sorted by span.
std::vector<Span> subject_cluster(const CorefClusters& clusters,
                                  const GenderProfile& profile,
                                  std::string_view text);

struct AdapterConfig {
  // Exactly one of `command` (subprocess over stdin/stdout) or
  // `host`+`port` (newline-delimited messages over a local socket).
  std::string command;
  std::string host;
  int port = 0;
  std::chrono::milliseconds timeout{30000};
};

// One request/response exchange with an external resolver. Throws
// ResolverUnavailable on transport failure or timeout, ProtocolError on a
// malformed response or out-of-bounds span.
CorefClusters resolve_external(std::string_view text, const AdapterConfig& config);

// Pure decoding half of resolve_external, exposed for tests:
// `{"id":n,"clusters":[[[start,end],...],...]}` with code-point offsets.
CorefClusters parse_adapter_response(std::string_view line, std::uint64_t expected_id,
                                     std::string_view text);

std::string make_adapter_request(std::uint64_t id, std::string_view text);

}  // namespace misgender

#endif  // MISGENDER_COREF_HPP_
