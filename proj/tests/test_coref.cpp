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

#include "misgender/coref.hpp"

#include <doctest.h>

#include "misgender/utf8.hpp"
#include "support.hpp"

using namespace misgender;

namespace {

std::string mention_surface(std::string_view text, const Mention& mention) {
  const std::u32string cps = utf8::decode(text);
  return utf8::encode(cps.substr(mention.span.begin, mention.span.length()));
}

// The cluster containing a mention with the given surface, or nullptr.
const std::vector<Mention>* cluster_of(const CorefClusters& clusters,
                                       std::string_view text,
                                       std::string_view surface) {
  for (const auto& cluster : clusters.clusters) {
    for (const Mention& mention : cluster) {
      if (mention_surface(text, mention) == surface) return &cluster;
    }
  }
  return nullptr;
}

CorefClusters resolve(const std::string& text, const GenderProfile& profile) {
  return resolve_heuristic(test::engine(), text, tokenize(text), profile);
}

}  // namespace

TEST_CASE("heuristic clusters the copular predicate with its subject") {
  const GenderProfile& bono = test::profile("chaz-bono");
  const std::string text =
      "Chaz is a lovely man with a deep understanding of woman's difficulties!";
  const CorefClusters clusters = resolve(text, bono);

  const auto* chaz = cluster_of(clusters, text, "Chaz");
  REQUIRE(chaz != nullptr);
  REQUIRE(chaz->size() == 2);
  CHECK(mention_surface(text, (*chaz)[1]) == "man");
  CHECK((*chaz)[1].kind == MentionKind::kNominal);
  // "woman's" stays unclustered.
  CHECK(cluster_of(clusters, text, "woman's") == nullptr);

  const auto spans = subject_cluster(clusters, bono, text);
  REQUIRE(spans.size() == 2);
}

TEST_CASE("pronouns link to the sentence-initial name of a prior sentence") {
  const GenderProfile& page = test::profile("elliot-page");
  const std::string text = "Sam praised Elliot Page. She is kind.";
  const CorefClusters clusters = resolve(text, page);

  const auto* sam = cluster_of(clusters, text, "Sam");
  REQUIRE(sam != nullptr);
  CHECK(cluster_of(clusters, text, "She") == sam);

  const auto* elliot = cluster_of(clusters, text, "Elliot Page");
  REQUIRE(elliot != nullptr);
  CHECK(elliot != sam);

  // Subject cluster excludes Sam's cluster even though it holds the pronoun.
  const auto spans = subject_cluster(clusters, page, text);
  REQUIRE(spans.size() == 1);
  CHECK(mention_surface(text, {spans[0], MentionKind::kName}) == "Elliot Page");
}

TEST_CASE("pronouns within a sentence link to its first preceding name") {
  const GenderProfile& page = test::profile("elliot-page");
  const std::string text =
      "Ellen Grace credits her mother with her success, and she is eternally "
      "grateful for her love and support.";
  const CorefClusters clusters = resolve(text, page);
  const auto* subject = cluster_of(clusters, text, "Ellen Grace");
  REQUIRE(subject != nullptr);
  CHECK(subject->size() == 5);  // name + 4 pronouns (deadname matches subject)

  const auto spans = subject_cluster(clusters, page, text);
  CHECK(spans.size() == 5);
}

TEST_CASE("no mentions yields empty clusters") {
  const GenderProfile& page = test::profile("elliot-page");
  CHECK(resolve("", page).clusters.empty());
  CHECK(resolve("nothing but lowercase words here", page).clusters.empty());
}

TEST_CASE("lowercase names leave no subject cluster") {
  const GenderProfile& miller = test::profile("ezra-miller");
  const std::string text =
      "@USERNAME shes a stalker check out her replies. every ezra miller "
      "thread she is there w seething lies who is it? clue [LINK]";
  const CorefClusters clusters = resolve(text, miller);
  CHECK(subject_cluster(clusters, miller, text).empty());
}

TEST_CASE("deadname mentions join the subject cluster") {
  const GenderProfile& page = test::profile("elliot-page");
  const std::string text = "Ellen was great in Juno. Elliot Page is kind.";
  const CorefClusters clusters = resolve(text, page);
  const auto* ellen = cluster_of(clusters, text, "Ellen");
  const auto* elliot = cluster_of(clusters, text, "Elliot Page");
  REQUIRE(ellen != nullptr);
  CHECK(ellen == elliot);  // merged via profile name/deadname matching
}

TEST_CASE("heuristic resolver is deterministic") {
  const GenderProfile& miller = test::profile("ezra-miller");
  const std::string text =
      "@USERNAME Damn, if Ezra Miller wasn't a f*****g psychopath then he "
      "would make a decent Flash.";
  const CorefClusters a = resolve(text, miller);
  const CorefClusters b = resolve(text, miller);
  REQUIRE(a.clusters.size() == b.clusters.size());
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    CHECK(a.clusters[i] == b.clusters[i]);
  }
  // "he" gates onto Ezra Miller here.
  const auto* miller_cluster = cluster_of(a, text, "Ezra Miller");
  REQUIRE(miller_cluster != nullptr);
  CHECK(cluster_of(a, text, "he") == miller_cluster);
}

TEST_CASE("subject_cluster output is a subset of all cluster spans") {
  const GenderProfile& page = test::profile("elliot-page");
  const std::string text = "Sam praised Elliot Page. She is kind.";
  const CorefClusters clusters = resolve(text, page);
  const auto spans = subject_cluster(clusters, page, text);
  for (const Span& span : spans) {
    bool found = false;
    for (const auto& cluster : clusters.clusters) {
      for (const Mention& mention : cluster) {
        if (mention.span == span) found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("adapter protocol: decode, bounds, duplicates") {
  const std::string text = "Elliot Page is kind to everyone";
  const CorefClusters ok = parse_adapter_response(
      R"({"id": 7, "clusters": [[[0, 11], [23, 26]]]})", 7, text);
  REQUIRE(ok.clusters.size() == 1);
  REQUIRE(ok.clusters[0].size() == 2);
  CHECK(ok.clusters[0][0].span == Span{0, 11});
  CHECK(ok.clusters[0][0].kind == MentionKind::kName);

  CHECK_THROWS_AS(parse_adapter_response(
                      R"({"id": 1, "clusters": [[[0, 1000000000]]]})", 1, text),
                  ProtocolError);
  CHECK_THROWS_AS(parse_adapter_response("not json", 1, text), ProtocolError);
  CHECK_THROWS_AS(parse_adapter_response(R"({"id": 2, "clusters": []})", 1, text),
                  ProtocolError);  // id mismatch
  CHECK_THROWS_AS(parse_adapter_response(
                      R"({"id": 1, "clusters": [[[0, 2]], [[0, 2]]]})", 1, text),
                  ProtocolError);  // duplicate span
}

TEST_CASE("external resolver over a subprocess pipe") {
  AdapterConfig config;
  // Tiny adapter: echoes one response for one request.
  config.command =
      "python3 -c \"import sys, json; req = json.loads(sys.stdin.readline()); "
      "print(json.dumps({'id': req['id'], 'clusters': [[[0, 11]]]}))\"";
  config.timeout = std::chrono::milliseconds(15000);
  const CorefClusters clusters = resolve_external("Elliot Page is kind", config);
  REQUIRE(clusters.clusters.size() == 1);
  CHECK(clusters.clusters[0][0].span == Span{0, 11});
}

TEST_CASE("external resolver timeout raises resolver-unavailable") {
  AdapterConfig config;
  config.command = "sleep 30";
  config.timeout = std::chrono::milliseconds(200);
  CHECK_THROWS_AS(resolve_external("Elliot Page", config), ResolverUnavailable);
}
