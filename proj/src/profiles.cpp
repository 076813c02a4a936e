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

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "misgender/textproc.hpp"
#include "misgender/utf8.hpp"

namespace misgender {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> folded_word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& token : tokenize(text)) {
    if (token.kind == TokenKind::kWord) out.push_back(token.folded);
  }
  return out;
}

void validate(const GenderProfile& profile) {
  if (profile.id.empty()) throw ParseError("profile with empty id");
  if (profile.name.empty()) {
    throw ParseError("profile " + profile.id + ": empty name");
  }
  if (profile.pronoun_sets.empty()) {
    throw ParseError("profile " + profile.id + ": needs at least one pronoun set");
  }
  if (profile.term_categories.empty()) {
    throw ParseError("profile " + profile.id + ": empty term categories");
  }
  for (const PronounSet& set : profile.pronoun_sets) {
    for (FormSlot slot :
         {FormSlot::kNominative, FormSlot::kObjective,
          FormSlot::kPossessiveDeterminer, FormSlot::kPossessivePronoun,
          FormSlot::kReflexive}) {
      if (set.form(slot).empty()) {
        throw ParseError("profile " + profile.id + ": empty pronoun form");
      }
    }
  }
  if (profile.deadname.has_value() != !profile.deadname_tokens.empty()) {
    throw ParseError("profile " + profile.id +
                     ": deadname and deadname_tokens must be present together");
  }
}

}  // namespace

const std::string& PronounSet::form(FormSlot slot) const {
  switch (slot) {
    case FormSlot::kNominative:
      return nominative;
    case FormSlot::kObjective:
      return objective;
    case FormSlot::kPossessiveDeterminer:
      return possessive_determiner;
    case FormSlot::kPossessivePronoun:
      return possessive_pronoun;
    case FormSlot::kReflexive:
      return reflexive;
  }
  return nominative;
}

bool PronounSet::same_paradigm(const PronounSet& other) const {
  return nominative == other.nominative && objective == other.objective &&
         possessive_determiner == other.possessive_determiner &&
         possessive_pronoun == other.possessive_pronoun &&
         reflexive == other.reflexive;
}

PronounSet she_paradigm() {
  return {"she", "her", "her", "hers", "herself", Agreement::kSingularVerb};
}

PronounSet he_paradigm() {
  return {"he", "him", "his", "his", "himself", Agreement::kSingularVerb};
}

PronounSet they_paradigm() {
  return {"they", "them", "their", "theirs", "themselves",
          Agreement::kPluralVerb};
}

std::set<TermCategory> infer_term_categories(
    const std::vector<PronounSet>& pronoun_sets) {
  if (pronoun_sets.empty()) {
    throw ContractViolation("infer_term_categories: no pronoun sets");
  }
  std::set<TermCategory> categories;
  for (const PronounSet& set : pronoun_sets) {
    if (set.same_paradigm(she_paradigm())) {
      categories.insert(TermCategory::kFeminine);
    } else if (set.same_paradigm(he_paradigm())) {
      categories.insert(TermCategory::kMasculine);
    } else {
      // they-paradigm and neo paradigms both map to neutral.
      categories.insert(TermCategory::kNeutral);
    }
  }
  return categories;
}

std::optional<std::string> derive_deadname(
    std::string_view name, const std::optional<std::string>& birth_name) {
  if (name.empty()) throw ContractViolation("derive_deadname: empty name");
  if (!birth_name || birth_name->empty()) return std::nullopt;
  if (utf8::normalize_key(name) == utf8::normalize_key(*birth_name)) {
    return std::nullopt;
  }
  return birth_name;
}

DeadnameTriggers deadname_trigger_tokens(const GenderProfile& profile) {
  DeadnameTriggers triggers;
  if (!profile.deadname) return triggers;
  const std::unordered_set<std::string> name_tokens(profile.name_tokens.begin(),
                                                    profile.name_tokens.end());
  for (const std::string& token : profile.deadname_tokens) {
    if (!name_tokens.count(token)) triggers.tokens.insert(token);
  }
  triggers.phrase = utf8::normalize_key(*profile.deadname);
  return triggers;
}

std::vector<GenderProfile> load_profiles(std::istream& in) {
  std::vector<GenderProfile> profiles;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ordered_json json;
    try {
      json = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("profile record " + std::to_string(record) + ": " +
                       e.what());
    }
    try {
      GenderProfile profile;
      profile.id = json.at("id").get<std::string>();
      profile.name = json.at("name").get<std::string>();
      profile.name_tokens = folded_word_tokens(profile.name);
      if (json.contains("gender_identities")) {
        profile.gender_identities =
            json["gender_identities"].get<std::vector<std::string>>();
      }
      for (const auto& row : json.at("pronouns")) {
        if (!row.is_array() || row.size() != 6) {
          throw ParseError("pronoun rows need 5 forms plus an agreement flag");
        }
        PronounSet set;
        set.nominative = utf8::fold_utf8(row[0].get<std::string>());
        set.objective = utf8::fold_utf8(row[1].get<std::string>());
        set.possessive_determiner = utf8::fold_utf8(row[2].get<std::string>());
        set.possessive_pronoun = utf8::fold_utf8(row[3].get<std::string>());
        set.reflexive = utf8::fold_utf8(row[4].get<std::string>());
        set.agreement = agreement_from_string(row[5].get<std::string>());
        profile.pronoun_sets.push_back(std::move(set));
      }
      if (json.contains("term_categories") && !json["term_categories"].empty()) {
        for (const auto& cat : json["term_categories"]) {
          profile.term_categories.insert(
              term_category_from_string(cat.get<std::string>()));
        }
      } else {
        profile.term_categories = infer_term_categories(profile.pronoun_sets);
      }
      if (json.contains("deadname") && !json["deadname"].is_null()) {
        profile.deadname =
            derive_deadname(profile.name, json["deadname"].get<std::string>());
        if (profile.deadname) {
          profile.deadname_tokens = folded_word_tokens(*profile.deadname);
        }
      }
      validate(profile);
      if (!seen_ids.insert(profile.id).second) {
        throw ParseError("duplicate profile id: " + profile.id);
      }
      profiles.push_back(std::move(profile));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("profile record " + std::to_string(record) + ": " +
                       e.what());
    } catch (const ParseError& e) {
      throw ParseError("profile record " + std::to_string(record) + ": " +
                       e.what());
    }
  }
  return profiles;
}

void save_profiles(std::ostream& out, const std::vector<GenderProfile>& profiles) {
  for (const GenderProfile& profile : profiles) {
    ordered_json json;
    json["id"] = profile.id;
    json["name"] = profile.name;
    json["gender_identities"] = profile.gender_identities;
    ordered_json pronouns = ordered_json::array();
    for (const PronounSet& set : profile.pronoun_sets) {
      pronouns.push_back({set.nominative, set.objective,
                          set.possessive_determiner, set.possessive_pronoun,
                          set.reflexive, std::string(to_string(set.agreement))});
    }
    json["pronouns"] = std::move(pronouns);
    if (profile.deadname) json["deadname"] = *profile.deadname;
    ordered_json categories = ordered_json::array();
    for (TermCategory category : profile.term_categories) {
      categories.push_back(std::string(to_string(category)));
    }
    json["term_categories"] = std::move(categories);
    out << json.dump() << '\n';
  }
}

std::vector<GenderProfile> load_profiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profiles file: " + path);
  return load_profiles(in);
}

}  // namespace misgender
