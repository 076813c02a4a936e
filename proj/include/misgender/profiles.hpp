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
// Gender linguistic profiles: a person's name, pronoun paradigms,
// acceptable gendered-term categories and optional deadname, plus the
// rules that derive them from raw records. Profiles are immutable after
// load and safe to share across threads.

#ifndef MISGENDER_PROFILES_HPP_
#define MISGENDER_PROFILES_HPP_

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/core.hpp"

namespace misgender {

// Five-form pronoun paradigm with its verb agreement class.
struct PronounSet {
  std::string nominative;
  std::string objective;
  std::string possessive_determiner;
  std::string possessive_pronoun;
  std::string reflexive;
  Agreement agreement = Agreement::kSingularVerb;

  const std::string& form(FormSlot slot) const;
  bool same_paradigm(const PronounSet& other) const;

  friend bool operator==(const PronounSet&, const PronounSet&) = default;
};

PronounSet she_paradigm();
PronounSet he_paradigm();
PronounSet they_paradigm();

struct GenderProfile {
  std::string id;
  std::string name;
  std::vector<std::string> name_tokens;  // folded word tokens of name
  std::vector<std::string> gender_identities;  // metadata for prompt builders only
  std::vector<PronounSet> pronoun_sets;  // order matters: first set is the edit target
  std::set<TermCategory> term_categories;
  std::optional<std::string> deadname;
  std::vector<std::string> deadname_tokens;  // folded; empty iff no deadname

  friend bool operator==(const GenderProfile&, const GenderProfile&) = default;
};

// she-paradigm -> feminine, he-paradigm -> masculine, they-paradigm ->
// neutral; unrecognized (neo) paradigms default to neutral. Throws
// ContractViolation on an empty list.
std::set<TermCategory> infer_term_categories(
    const std::vector<PronounSet>& pronoun_sets);

// The birth name counts as a deadname only when it differs from the
// current name under case-insensitive, whitespace-collapsed comparison.
std::optional<std::string> derive_deadname(
    std::string_view name, const std::optional<std::string>& birth_name);

struct DeadnameTriggers {
  std::set<std::string> tokens;        // folded, minus tokens shared with name
  std::optional<std::string> phrase;   // folded full deadname
};

DeadnameTriggers deadname_trigger_tokens(const GenderProfile& profile);

// One JSON record per line:
//   {"id":..., "name":..., "gender_identities":[...],
//    "pronouns":[[nom,obj,pdet,ppron,refl,agreement],...],
//    "deadname":..., "term_categories":[...]}
// term_categories defaults to infer_term_categories; deadname is kept only
// when derive_deadname accepts it. Duplicate ids and schema violations
// raise ParseError with the offending record index.
std::vector<GenderProfile> load_profiles(std::istream& in);

void save_profiles(std::ostream& out, const std::vector<GenderProfile>& profiles);

std::vector<GenderProfile> load_profiles_file(const std::string& path);

}  // namespace misgender

#endif  // MISGENDER_PROFILES_HPP_
