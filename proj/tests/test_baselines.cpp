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

#include "misgender/baselines.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "support.hpp"

using namespace misgender;

namespace {

const FewShotBanks& banks() {
  static const FewShotBanks loaded = FewShotBanks::load(test::data_dir() / "fewshot");
  return loaded;
}

}  // namespace

TEST_CASE("detect prompt: bank selection and answer-phrase counts") {
  const PromptBundle bundle = build_detect_prompt(
      banks(), test::profile("caitlyn-jenner"),
      "Caitlyn attended the gala last night.", Domain::kXPost);

  // Gender-matched examples: the trans-woman bank names its five subjects.
  for (const char* name :
       {"Caitlyn Jenner", "Chelsea Manning", "Wendy Carlos", "Lili Elbe",
        "Laverne Cox"}) {
    CHECK(bundle.few_shot_block.find(name) != std::string::npos);
  }
  // Three positive examples in the bank block.
  std::size_t yes_count = 0;
  std::string::size_type pos = 0;
  while ((pos = bundle.few_shot_block.find("YES Misgendering", pos)) !=
         std::string::npos) {
    ++yes_count;
    pos += 1;
  }
  CHECK(yes_count == 3);
  CHECK(bundle.system_instructions.find(
            "act of using incorrect gendered terms") != std::string::npos);
  CHECK(bundle.assembled == bundle.system_instructions +
                                bundle.few_shot_block + bundle.instance_block);
}

TEST_CASE("detect prompt: instance block fields and deadname omission") {
  const PromptBundle with_deadname = build_detect_prompt(
      banks(), test::profile("caitlyn-jenner"), "text body", Domain::kXPost);
  CHECK(with_deadname.instance_block.find("Person: Caitlyn Jenner\n") !=
        std::string::npos);
  CHECK(with_deadname.instance_block.find(
            "Pronouns: she/her/her/hers/herself\n") != std::string::npos);
  CHECK(with_deadname.instance_block.find("Gendered Terms: feminine\n") !=
        std::string::npos);
  CHECK(with_deadname.instance_block.find(
            "Deadname: William Bruce Jenner\n") != std::string::npos);
  CHECK(with_deadname.instance_block.find("Tweet: text body\n") !=
        std::string::npos);
  // Identity appears only behind the flag.
  CHECK(with_deadname.instance_block.find("Gender Identity") ==
        std::string::npos);
  const PromptBundle with_identity =
      build_detect_prompt(banks(), test::profile("caitlyn-jenner"), "text body",
                          Domain::kXPost, /*include_gender_identity=*/true);
  CHECK(with_identity.instance_block.find("Gender Identity: trans woman\n") !=
        std::string::npos);

  const PromptBundle no_deadname = build_detect_prompt(
      banks(), test::profile("buck-angel"), "text body", Domain::kXPost);
  CHECK(no_deadname.instance_block.find("Deadname") == std::string::npos);
}

TEST_CASE("detect prompt: domain noun adjusts") {
  const PromptBundle yt = build_detect_prompt(
      banks(), test::profile("chaz-bono"), "body", Domain::kYouTubeComment);
  CHECK(yt.system_instructions.find("a YouTube comment about this individual") !=
        std::string::npos);
  CHECK(yt.system_instructions.find("in the following YouTube comments.") !=
        std::string::npos);
  CHECK(yt.instance_block.find("YouTube Comment: body\n") != std::string::npos);

  const PromptBundle llm = build_detect_prompt(
      banks(), test::profile("ezra-miller"), "body", Domain::kLlmGeneration);
  CHECK(llm.system_instructions.find("a sentence about this individual") !=
        std::string::npos);
  CHECK(llm.instance_block.find("Sentence: body\n") != std::string::npos);
}

TEST_CASE("detect prompt assembly is byte-stable") {
  const PromptBundle a = build_detect_prompt(
      banks(), test::profile("elliot-page"), "Same text.", Domain::kXPost);
  const PromptBundle b = build_detect_prompt(
      banks(), test::profile("elliot-page"), "Same text.", Domain::kXPost);
  CHECK(a.assembled == b.assembled);
}

TEST_CASE("bank selection follows gender identity, then categories") {
  CHECK(fewshot_category(test::profile("caitlyn-jenner")) == "trans-woman");
  CHECK(fewshot_category(test::profile("chaz-bono")) == "trans-man");
  CHECK(fewshot_category(test::profile("ezra-miller")) == "non-binary");
  // Elliot Page lists trans man first.
  CHECK(fewshot_category(test::profile("elliot-page")) == "trans-man");

  GenderProfile anonymous = test::profile("caitlyn-jenner");
  anonymous.gender_identities.clear();
  CHECK(fewshot_category(anonymous) == "trans-woman");  // feminine-only
}

TEST_CASE("parse_detect_response: last occurrence decides") {
  CHECK(parse_detect_response("reasoning... Answer: YES Misgendering") ==
        Label::kMisgendering);
  CHECK(parse_detect_response("reasoning... Answer: NO Misgendering") ==
        Label::kNoMisgendering);
  CHECK(parse_detect_response(
            "It could be YES Misgendering but... Answer: NO Misgendering") ==
        Label::kNoMisgendering);
  CHECK(parse_detect_response(
            "Maybe NO Misgendering. Final: yes misgendering") ==
        Label::kMisgendering);
  CHECK_FALSE(parse_detect_response("I cannot help with that.").has_value());
  CHECK_FALSE(parse_detect_response("").has_value());
}

TEST_CASE("few-shot banks are self-consistent under the parser") {
  for (const auto& [category, bank] : banks().by_category) {
    REQUIRE(bank.examples.size() == 5);
    std::size_t positives = 0;
    for (const std::string& example : bank.examples) {
      const auto label = parse_detect_response(example);
      REQUIRE(label.has_value());
      if (*label == Label::kMisgendering) ++positives;
    }
    CHECK(positives == 3);
  }
}

TEST_CASE("edit prompt: verbatim zero-shot instructions, no identity") {
  const GenderProfile& page = test::profile("elliot-page");
  const PromptBundle bundle = build_edit_prompt(
      page, "Ellen Grace credits her mother with her success.", std::nullopt);
  CHECK(bundle.system_instructions.find(
            "re-write the sentence with minimal changes") != std::string::npos);
  CHECK(bundle.few_shot_block.empty());
  CHECK(bundle.instance_block.find("Name: Elliot Page\n") != std::string::npos);
  CHECK(bundle.instance_block.find("Deadname: Ellen Grace Philpotts-Page\n") !=
        std::string::npos);
  CHECK(bundle.instance_block.find("identity") == std::string::npos);
  CHECK(bundle.instance_block.find("Identity") == std::string::npos);
  CHECK(bundle.instance_block.find("Context:") == std::string::npos);

  const PromptBundle with_context = build_edit_prompt(
      page, "He thanked the crew.", std::string("Elliot Page wrapped filming."));
  CHECK(with_context.instance_block.find(
            "Context: Elliot Page wrapped filming.\n") != std::string::npos);

  CHECK_THROWS_AS(build_edit_prompt(page, "", std::nullopt), ContractViolation);
  CHECK_THROWS_AS(
      build_edit_prompt(page, "Two sentences. Right here.", std::nullopt, 2),
      ContractViolation);
}

TEST_CASE("completion backend replay mode") {
  const std::string fixture_path = "replay_fixture_test.jsonl";
  const std::string prompt = "what is the label?";
  {
    std::ofstream out(fixture_path);
    std::map<std::string, std::string> records = {
        {prompt_fingerprint(prompt), "Answer: YES Misgendering"}};
    write_replay_fixture(out, records);
  }
  BackendConfig config;
  config.replay_path = fixture_path;
  config.replay_only = true;
  const CompletionBackend backend(config);
  CHECK(backend.complete(prompt) == "Answer: YES Misgendering");
  CHECK_THROWS_AS(backend.complete("never recorded"), BackendError);
  std::remove(fixture_path.c_str());
}

TEST_CASE("completion backend refuses silent network fallback") {
  BackendConfig config;  // no endpoint, no replay
  const CompletionBackend backend(config);
  CHECK_THROWS_AS(backend.complete("anything"), BackendError);
}

TEST_CASE("prompt fingerprint is stable and collision-free on the banks") {
  CHECK(prompt_fingerprint("abc") == prompt_fingerprint("abc"));
  CHECK(prompt_fingerprint("abc") != prompt_fingerprint("abd"));
  CHECK(prompt_fingerprint("").size() == 16);
}

TEST_CASE("backend config file round-trip") {
  const std::string path = "backend_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"endpoint":"http://localhost:9/v1","model":"m1",
               "temperature":0.0,"max_tokens":64,"timeout_ms":1500,
               "retries":1,"replay_only":true})";
  }
  const BackendConfig config = BackendConfig::load_file(path);
  CHECK(config.endpoint == "http://localhost:9/v1");
  CHECK(config.model == "m1");
  CHECK(config.max_tokens == 64);
  CHECK(config.timeout == std::chrono::milliseconds(1500));
  CHECK(config.retries == 1);
  CHECK(config.replay_only);
  std::remove(path.c_str());
  CHECK_THROWS_AS(BackendConfig::load_file("no-such-file.json"), ConfigError);
}

TEST_CASE("http backend: completion extraction and retry on server errors") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/v1/completions", [&hits](const httplib::Request& request,
                                         httplib::Response& response) {
    const auto body = nlohmann::json::parse(request.body);
    REQUIRE(body.at("model") == "test-model");
    if (hits.fetch_add(1) == 0) {
      response.status = 500;  // first attempt fails, retry succeeds
      return;
    }
    nlohmann::json reply;
    reply["choices"] = {{{"text", "Answer: NO Misgendering"}}};
    response.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread serving([&server] { server.listen_after_bind(); });
  server.wait_until_ready();

  BackendConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/completions";
  config.model = "test-model";
  config.retries = 2;
  config.timeout = std::chrono::milliseconds(5000);
  const CompletionBackend backend(config);
  CHECK(backend.complete("prompt body") == "Answer: NO Misgendering");
  CHECK(hits.load() == 2);

  server.stop();
  serving.join();
}

TEST_CASE("http backend: unreachable endpoint raises backend error") {
  BackendConfig config;
  config.endpoint = "http://127.0.0.1:9/unreachable";  // discard port
  config.model = "m";
  config.retries = 0;
  config.timeout = std::chrono::milliseconds(500);
  const CompletionBackend backend(config);
  CHECK_THROWS_AS(backend.complete("x"), BackendError);
}
