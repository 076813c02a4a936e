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

#include "misgender/textproc.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "misgender/utf8.hpp"
#include "support.hpp"

using namespace misgender;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& token : tokens) out.push_back(token.surface);
  return out;
}

std::string reconstruct(std::string_view text, const std::vector<Token>& tokens) {
  const std::u32string cps = utf8::decode(text);
  std::u32string out;
  std::size_t cursor = 0;
  for (const Token& token : tokens) {
    out += cps.substr(cursor, token.span.begin - cursor);
    out += utf8::decode(token.surface);
    cursor = token.span.end;
  }
  out += cps.substr(cursor);
  return utf8::encode(out);
}

}  // namespace

TEST_CASE("tokenize basic segmentation") {
  const auto tokens = tokenize("Elliot Page is a woman…");
  CHECK(surfaces(tokens) ==
        std::vector<std::string>{"Elliot", "Page", "is", "a", "woman", "…"});
  CHECK(tokens[0].capitalized);
  CHECK_FALSE(tokens[2].capitalized);
  CHECK(tokens[5].kind == TokenKind::kPunctuation);
}

TEST_CASE("tokenize handles, contractions, hyphens, possessives") {
  const auto tokens = tokenize("@USERNAME shes a stalker");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0].kind == TokenKind::kHandle);
  CHECK(tokens[0].surface == "@USERNAME");
  CHECK(tokens[1].surface == "shes");

  const auto hyphen = tokenize("conventional \"he-man,\" I");
  CHECK(surfaces(hyphen) ==
        std::vector<std::string>{"conventional", "\"", "he-man", ",\"", "I"});

  const auto poss = tokenize("woman's difficulties");
  CHECK(poss[0].surface == "woman's");
  CHECK(poss[0].folded == "woman's");

  const auto url = tokenize("see https://example.com/x now");
  CHECK(url[1].kind == TokenKind::kUrl);

  CHECK(tokenize("").empty());
}

TEST_CASE("tokenize spans reconstruct the input exactly") {
  const std::string samples[] = {
      "Ellen Grace credits her mother with her success, and she is eternally "
      "grateful for her love and support.",
      "@USERNAME Damn, if Ezra Miller wasn't a f*****g psychopath then he "
      "would make a decent Flash.",
      "It's a she!!",
      "Pejić — “Pejić’s” runway… walk!",
      "@fan 💙💙 Elliot Page is a king 👑 fr",
  };
  for (const std::string& sample : samples) {
    const auto tokens = tokenize(sample);
    const std::u32string cps = utf8::decode(sample);
    for (const Token& token : tokens) {
      CHECK(utf8::encode(cps.substr(token.span.begin, token.span.length())) ==
            token.surface);
    }
    CHECK(reconstruct(sample, tokens) == sample);
  }
}

TEST_CASE("tokenize is deterministic under random ASCII noise") {
  std::mt19937_64 rng(20260810);
  const std::string alphabet = "ab @.'-?!\"XyZ09…";
  const std::u32string alpha_cps = utf8::decode(alphabet);
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string cps;
    const std::size_t length = rng() % 40;
    for (std::size_t i = 0; i < length; ++i) {
      cps.push_back(alpha_cps[rng() % alpha_cps.size()]);
    }
    const std::string text = utf8::encode(cps);
    const auto tokens_a = tokenize(text);
    const auto tokens_b = tokenize(text);
    CHECK(surfaces(tokens_a) == surfaces(tokens_b));
    CHECK(reconstruct(text, tokens_a) == text);
    for (std::size_t i = 1; i < tokens_a.size(); ++i) {
      CHECK(tokens_a[i - 1].span.end <= tokens_a[i].span.begin);
    }
  }
}

TEST_CASE("split_sentences respects abbreviation guard") {
  const auto& morph = test::engine().morph;
  CHECK(split_sentences("", morph).empty());
  CHECK(split_sentences("One sentence here", morph).size() == 1);
  CHECK(split_sentences("First here. Second there.", morph).size() == 2);
  CHECK(split_sentences("Dr. Smith met Page.", morph).size() == 1);
  CHECK(split_sentences("J. Smith arrived. He sat.", morph).size() == 2);
  CHECK(split_sentences("Costs rose 3.5 percent. Then fell.", morph).size() == 2);
  CHECK(split_sentences("Really?! No way. Wow", morph).size() == 3);

  const auto spans =
      split_sentences("She sang. They listened closely.", morph);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].span.begin == 0);
  CHECK(spans[0].span.end == 9);
  CHECK(spans[1].index == 1);
}

TEST_CASE("match_case transfers casing class") {
  CHECK(match_case("he", "She") == "He");
  CHECK(match_case("they", "SHE") == "THEY");
  CHECK(match_case("his", "her") == "his");
  CHECK(match_case("elliot", "ELLEN") == "ELLIOT");
  CHECK(match_case("they", "I") == "They");  // single letters title-case
}

TEST_CASE("adjust_verb_agreement fixture: all 60 cases") {
  const auto& morph = test::engine().morph;
  std::ifstream in(test::data_dir() / "fixtures" / "verb_agreement_cases.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::size_t cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string verb, target, expected;
    std::getline(ss, verb, ',');
    std::getline(ss, target, ',');
    std::getline(ss, expected, ',');
    const VerbAdjustment adjusted =
        adjust_verb_agreement(morph, verb, agreement_from_string(target));
    CAPTURE(verb);
    CAPTURE(target);
    CHECK(adjusted.form == expected);
    ++cases;
  }
  CHECK(cases == 60);
}

TEST_CASE("adjust_verb_agreement involution on the irregular table") {
  const auto& morph = test::engine().morph;
  for (const auto& [sg, pl] : morph.plural_of) {
    CHECK(adjust_verb_agreement(morph, sg, Agreement::kPluralVerb).form == pl);
    CHECK(adjust_verb_agreement(morph, pl, Agreement::kSingularVerb).form == sg);
  }
}

TEST_CASE("adjust_verb_agreement no-ops carry the flag") {
  const auto& morph = test::engine().morph;
  const VerbAdjustment noop =
      adjust_verb_agreement(morph, "mother", Agreement::kPluralVerb);
  CHECK_FALSE(noop.changed);
  CHECK(noop.form == "mother");
  // Unmarked past tense passes through (documented no-op).
  CHECK_FALSE(adjust_verb_agreement(morph, "sang", Agreement::kSingularVerb).changed);
}

TEST_CASE("resolve_pronoun_slot fixture: all 30 cases") {
  std::ifstream in(test::data_dir() / "fixtures" / "pronoun_slot_cases.jsonl");
  REQUIRE(in.good());
  const auto& pronouns = test::engine().pronouns;
  std::string line;
  std::size_t cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto json = nlohmann::json::parse(line);
    const std::string text = json.at("text");
    const std::string pronoun = json.at("pronoun");
    const std::size_t occurrence = json.at("occurrence");
    const std::string expected = json.at("expected_slot");

    const auto tokens = tokenize(text);
    std::size_t seen = 0;
    std::size_t index = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].folded == pronoun) {
        if (seen == occurrence) {
          index = i;
          break;
        }
        ++seen;
      }
    }
    REQUIRE(index < tokens.size());
    std::vector<SlotCandidate> candidates;
    for (const PronounRef& ref : pronouns.lookup(pronoun)) {
      candidates.push_back({ref.set_id, ref.slot});
    }
    REQUIRE_FALSE(candidates.empty());
    const SlotChoice choice = resolve_pronoun_slot(index, tokens, candidates);
    CAPTURE(text);
    CHECK(to_string(choice.candidate.slot) == expected);
    ++cases;
  }
  CHECK(cases == 30);
}

TEST_CASE("resolve_pronoun_slot contract") {
  const auto tokens = tokenize("She saw her.");
  CHECK_THROWS_AS(resolve_pronoun_slot(0, tokens, {}), ContractViolation);
  // Always returns one of the candidates.
  const std::vector<SlotCandidate> candidates = {
      {"she", FormSlot::kObjective}, {"she", FormSlot::kPossessiveDeterminer}};
  const SlotChoice choice = resolve_pronoun_slot(2, tokens, candidates);
  CHECK((choice.candidate == candidates[0] || choice.candidate == candidates[1]));
}
