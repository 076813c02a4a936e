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

#include "misgender/profiles.hpp"

#include <random>
#include <sstream>

#include <doctest.h>

#include "support.hpp"

using namespace misgender;

TEST_CASE("infer_term_categories maps paradigms to categories") {
  CHECK(infer_term_categories({she_paradigm()}) ==
        std::set<TermCategory>{TermCategory::kFeminine});
  CHECK(infer_term_categories({he_paradigm(), they_paradigm()}) ==
        std::set<TermCategory>{TermCategory::kMasculine, TermCategory::kNeutral});
  // Neo paradigms default to neutral.
  const PronounSet xe{"xe", "xem", "xyr", "xyrs", "xemself",
                      Agreement::kSingularVerb};
  CHECK(infer_term_categories({xe}) ==
        std::set<TermCategory>{TermCategory::kNeutral});
  CHECK_THROWS_AS(infer_term_categories({}), ContractViolation);
}

TEST_CASE("infer_term_categories is monotone under added sets") {
  const std::vector<PronounSet> pool = {she_paradigm(), he_paradigm(),
                                        they_paradigm()};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PronounSet> sets = {pool[rng() % pool.size()]};
    auto before = infer_term_categories(sets);
    sets.push_back(pool[rng() % pool.size()]);
    auto after = infer_term_categories(sets);
    for (TermCategory category : before) CHECK(after.count(category) == 1);
  }
}

TEST_CASE("derive_deadname keeps only differing birth names") {
  CHECK(derive_deadname("Elliot Page", std::string("Ellen Grace Philpotts-Page"))
            .value() == "Ellen Grace Philpotts-Page");
  CHECK_FALSE(derive_deadname("Buck Angel", std::string("Buck Angel")).has_value());
  CHECK_FALSE(derive_deadname("Buck Angel", std::nullopt).has_value());
  // Casing / whitespace variants of the same name never count.
  CHECK_FALSE(derive_deadname("Buck Angel", std::string("  buck   ANGEL "))
                  .has_value());
}

TEST_CASE("deadname_trigger_tokens excludes shared name tokens") {
  const GenderProfile& page = test::profile("elliot-page");
  const DeadnameTriggers triggers = deadname_trigger_tokens(page);
  CHECK(triggers.tokens ==
        std::set<std::string>{"ellen", "grace", "philpotts-page"});
  CHECK(triggers.phrase.value() == "ellen grace philpotts-page");
  CHECK(triggers.tokens.count("page") == 0);

  const GenderProfile& bono = test::profile("chaz-bono");
  const DeadnameTriggers bono_triggers = deadname_trigger_tokens(bono);
  CHECK(bono_triggers.tokens == std::set<std::string>{"chastity"});

  const GenderProfile& buck = test::profile("buck-angel");
  CHECK(deadname_trigger_tokens(buck).tokens.empty());

  // Disjointness with the current name, for every bundled profile.
  for (const GenderProfile& profile : test::profiles()) {
    const DeadnameTriggers t = deadname_trigger_tokens(profile);
    for (const std::string& token : profile.name_tokens) {
      CHECK(t.tokens.count(token) == 0);
    }
  }
}

TEST_CASE("load_profiles parses the Fig-style record") {
  std::istringstream in(R"({"id":"p1","name":"Elliot Page","gender_identities":["trans man","non-binary"],"pronouns":[["he","him","his","his","himself","singular-verb"],["they","them","their","theirs","themselves","plural-verb"]],"deadname":"Ellen Grace Philpotts-Page"})"
                        "\n");
  const auto profiles = load_profiles(in);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].pronoun_sets.size() == 2);
  // term_categories missing -> inferred from the pronoun sets.
  CHECK(profiles[0].term_categories ==
        std::set<TermCategory>{TermCategory::kMasculine, TermCategory::kNeutral});
  CHECK(profiles[0].deadname.value() == "Ellen Grace Philpotts-Page");
  CHECK(profiles[0].name_tokens == std::vector<std::string>{"elliot", "page"});
}

TEST_CASE("load_profiles rejects bad records") {
  std::istringstream unknown_category(
      R"({"id":"p1","name":"X","pronouns":[["she","her","her","hers","herself","singular-verb"]],"term_categories":["femme"]})"
      "\n");
  CHECK_THROWS_AS(load_profiles(unknown_category), ParseError);

  std::istringstream duplicate(
      R"({"id":"p1","name":"X","pronouns":[["she","her","her","hers","herself","singular-verb"]]})"
      "\n"
      R"({"id":"p1","name":"Y","pronouns":[["she","her","her","hers","herself","singular-verb"]]})"
      "\n");
  CHECK_THROWS_AS(load_profiles(duplicate), ParseError);

  std::istringstream short_row(
      R"({"id":"p1","name":"X","pronouns":[["she","her","her","hers","herself"]]})"
      "\n");
  CHECK_THROWS_AS(load_profiles(short_row), ParseError);

  std::istringstream empty("");
  CHECK(load_profiles(empty).empty());
}

TEST_CASE("profiles serialization round-trips") {
  const auto& originals = test::profiles();
  std::ostringstream out;
  save_profiles(out, originals);
  std::istringstream in(out.str());
  const auto reloaded = load_profiles(in);
  CHECK(reloaded == originals);

  // Saving again is byte-stable.
  std::ostringstream out2;
  save_profiles(out2, reloaded);
  CHECK(out2.str() == out.str());
}
