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

#include "misgender/lexicon.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace misgender;

TEST_CASE("lookup_pronoun reports every matching slot") {
  const auto& table = test::engine().pronouns;

  const auto her = lookup_pronoun(table, "her");
  REQUIRE(her.size() >= 2);
  CHECK(her[0].set_id == "she");
  CHECK(her[0].slot == FormSlot::kObjective);
  CHECK(her[1].slot == FormSlot::kPossessiveDeterminer);

  const auto his = lookup_pronoun(table, "his");
  REQUIRE(his.size() == 2);
  CHECK(his[0].slot == FormSlot::kPossessiveDeterminer);
  CHECK(his[1].slot == FormSlot::kPossessivePronoun);

  const auto themselves = lookup_pronoun(table, "themselves");
  REQUIRE(themselves.size() == 1);
  CHECK(themselves[0].set_id == "they");
  CHECK(themselves[0].slot == FormSlot::kReflexive);

  CHECK(lookup_pronoun(table, "Table").empty());
  CHECK(lookup_pronoun(table, "SHE").size() == 1);  // case-insensitive
}

TEST_CASE("lookup_gendered_term folds case and strips possessives") {
  const auto& terms = test::engine().terms;

  const auto queen = lookup_gendered_term(terms, "queen");
  REQUIRE(queen.has_value());
  CHECK(queen->category == TermCategory::kFeminine);
  CHECK(terms.rows()[queen->row] ==
        GenderedTermRow{"queen", "king", "monarch"});

  const auto womans = lookup_gendered_term(terms, "woman's");
  REQUIRE(womans.has_value());
  CHECK(womans->category == TermCategory::kFeminine);
  CHECK(terms.rows()[womans->row].neutral == "person");

  CHECK(lookup_gendered_term(terms, "sisters'").has_value());
  CHECK(lookup_gendered_term(terms, "Queen").has_value());
  CHECK_FALSE(lookup_gendered_term(terms, "broither").has_value());
  CHECK_FALSE(lookup_gendered_term(terms, "table").has_value());
}

TEST_CASE("equivalent_term selects the requested slot") {
  const GenderedTermRow girl{"girl", "boy", "child"};
  CHECK(equivalent_term(girl, TermCategory::kMasculine) == "boy");
  const GenderedTermRow sibling{"sister", "brother", "sibling"};
  CHECK(equivalent_term(sibling, TermCategory::kNeutral) == "sibling");
  const GenderedTermRow queen{"queen", "king", "monarch"};
  CHECK(equivalent_term(queen, TermCategory::kFeminine) == "queen");
  // Idempotent under a fixed target.
  const std::string once = equivalent_term(queen, TermCategory::kNeutral);
  CHECK(equivalent_term(queen, TermCategory::kNeutral) == once);
}

TEST_CASE("term table surfaces map back to their row and category") {
  const auto& terms = test::engine().terms;
  for (std::size_t i = 0; i < terms.rows().size(); ++i) {
    for (TermCategory category :
         {TermCategory::kFeminine, TermCategory::kMasculine,
          TermCategory::kNeutral}) {
      const auto ref =
          lookup_gendered_term(terms, equivalent_term(terms.rows()[i], category));
      REQUIRE(ref.has_value());
      CHECK(ref->row == i);
      CHECK(ref->category == category);
    }
  }
}

TEST_CASE("no surface is in both the pronoun and the term index") {
  const auto& ctx = test::engine();
  for (const auto& row : ctx.terms.rows()) {
    for (const std::string* cell : {&row.feminine, &row.masculine, &row.neutral}) {
      CHECK(lookup_pronoun(ctx.pronouns, *cell).empty());
    }
  }
}

TEST_CASE("inappropriate_inventory complements the profile") {
  const auto& ctx = test::engine();

  const auto page = inappropriate_inventory(ctx.pronouns, test::profile("elliot-page"));
  CHECK(page.categories == std::set<TermCategory>{TermCategory::kFeminine});
  CHECK(page.pronoun_set_ids.count("she") == 1);
  CHECK(page.pronoun_set_ids.count("he") == 0);
  CHECK(page.pronoun_set_ids.count("they") == 0);

  const auto jenner =
      inappropriate_inventory(ctx.pronouns, test::profile("caitlyn-jenner"));
  CHECK(jenner.categories == std::set<TermCategory>{TermCategory::kMasculine,
                                                    TermCategory::kNeutral});
  CHECK(jenner.pronoun_set_ids.count("he") == 1);
  CHECK(jenner.pronoun_set_ids.count("they") == 1);
  CHECK(jenner.pronoun_set_ids.count("she") == 0);

  GenderProfile everything = test::profile("elliot-page");
  everything.pronoun_sets = {she_paradigm(), he_paradigm(), they_paradigm()};
  for (const auto& entry : ctx.pronouns.sets()) {
    everything.pronoun_sets.push_back(entry.set);
  }
  everything.term_categories = {TermCategory::kFeminine, TermCategory::kMasculine,
                                TermCategory::kNeutral};
  const auto none = inappropriate_inventory(ctx.pronouns, everything);
  CHECK(none.categories.empty());
  CHECK(none.pronoun_set_ids.empty());
}

TEST_CASE("table construction pipeline with oracle stubs") {
  const auto& pronouns = test::engine().pronouns;
  const WordClassifier classifier = [](const std::string& word) {
    return (word == "girl" || word == "queen") ? TermCategory::kFeminine
                                               : TermCategory::kMasculine;
  };
  const PairGenerator pair_generator = [](const std::string& word) -> std::string {
    if (word == "girl") return "boy";
    if (word == "queen") return "king";
    return "";
  };
  const Neutralizer neutralizer = [](const std::string& fem,
                                     const std::string&) -> std::string {
    if (fem == "girl") return "child";
    if (fem == "queen") return "king";  // collides with the masculine word
    return "";
  };

  std::vector<std::string> warnings;
  const auto table =
      build_term_table({"girl", "boy", "queen", "king", "she", "two words"},
                       classifier, pair_generator, neutralizer, pronouns,
                       &warnings);
  REQUIRE(table.rows().size() == 1);  // queen/king dropped: neutral == masculine
  CHECK(table.rows()[0] == GenderedTermRow{"girl", "boy", "child"});
  CHECK_FALSE(warnings.empty());  // pronoun seed + dropped row are reported
}

TEST_CASE("term table build rejects collisions and pronoun surfaces") {
  const auto& pronouns = test::engine().pronouns;
  CHECK_THROWS_AS(GenderedTermTable::build({{"girl", "boy", "child"},
                                            {"lass", "lad", "child"}},
                                           pronouns),
                  ParseError);
  CHECK_THROWS_AS(GenderedTermTable::build({{"her", "him", "them"}}, pronouns),
                  ParseError);
  CHECK_THROWS_AS(GenderedTermTable::build({{"girl", "boy", "boy"}}, pronouns),
                  ParseError);
}
