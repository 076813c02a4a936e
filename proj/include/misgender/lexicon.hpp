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
// Pronoun paradigm table and the feminine/masculine/neutral word
// equivalence table, plus the table-construction pipeline with a pluggable
// word-gender classifier. Tables are immutable after build.

#ifndef MISGENDER_LEXICON_HPP_
#define MISGENDER_LEXICON_HPP_

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "misgender/core.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

struct PronounRef {
  std::string set_id;
  FormSlot slot = FormSlot::kNominative;

  friend bool operator==(const PronounRef&, const PronounRef&) = default;
};

class PronounTable {
 public:
  struct Entry {
    std::string id;
    PronounSet set;
  };

  // Collisions across sets are fine (the index is one-to-many); duplicate
  // set ids are not.
  static PronounTable build(std::vector<Entry> entries);
  static PronounTable load(std::istream& in);
  static PronounTable load_file(const std::string& path);

  const std::vector<Entry>& sets() const { return sets_; }
  const PronounSet* find_set(std::string_view id) const;

  // All (set, form) slots whose surface matches, case-insensitively, in
  // paradigm order within each set. Empty when not a pronoun.
  std::vector<PronounRef> lookup(std::string_view surface) const;

  bool contains_surface(std::string_view folded) const;

  // Ids of table paradigms that match any of the profile's pronoun sets.
  std::set<std::string> acceptable_set_ids(const GenderProfile& profile) const;

 private:
  std::vector<Entry> sets_;
  std::unordered_map<std::string, std::vector<PronounRef>> index_;
};

std::vector<PronounRef> lookup_pronoun(const PronounTable& table,
                                       std::string_view surface);

struct GenderedTermRow {
  std::string feminine;
  std::string masculine;
  std::string neutral;

  friend bool operator==(const GenderedTermRow&, const GenderedTermRow&) = default;
};

struct TermRef {
  std::size_t row = 0;
  TermCategory category = TermCategory::kNeutral;

  friend bool operator==(const TermRef&, const TermRef&) = default;
};

class GenderedTermTable {
 public:
  // Rejects rows violating the invariants (empty or multi-word cells,
  // feminine == masculine, neutral == masculine, pronoun surfaces) and any
  // surface collision across the index.
  static GenderedTermTable build(std::vector<GenderedTermRow> rows,
                                 const PronounTable& pronouns);
  static GenderedTermTable load(std::istream& in, const PronounTable& pronouns);
  static GenderedTermTable load_file(const std::string& path,
                                     const PronounTable& pronouns);

  const std::vector<GenderedTermRow>& rows() const { return rows_; }

  // Case-folds and strips a possessive suffix ("woman's" -> "woman").
  std::optional<TermRef> lookup(std::string_view surface) const;

  bool contains_surface(std::string_view folded) const;

 private:
  std::vector<GenderedTermRow> rows_;
  std::unordered_map<std::string, TermRef> index_;
};

std::optional<TermRef> lookup_gendered_term(const GenderedTermTable& table,
                                            std::string_view surface);

const std::string& equivalent_term(const GenderedTermRow& row,
                                   TermCategory target);

struct InappropriateInventory {
  std::set<TermCategory> categories;
  std::set<std::string> pronoun_set_ids;
};

// Complement of the profile's acceptable categories, and the table
// paradigms the profile does not use.
InappropriateInventory inappropriate_inventory(const PronounTable& pronouns,
                                               const GenderProfile& profile);

// Callbacks for the table-construction pipeline. The classifier decides
// feminine vs masculine; the pair generator produces the opposite-gender
// mate; the neutralizer produces the gender-neutral term for a pair.
using WordClassifier = std::function<TermCategory(const std::string&)>;
using PairGenerator = std::function<std::string(const std::string&)>;
using Neutralizer =
    std::function<std::string(const std::string&, const std::string&)>;

// Classifies each single-word seed, pairs feminine words with generated
// masculine mates found in the classified masculine list, generates
// feminine mates for the leftover masculine words, then generates neutral
// terms. Rows with multi-word generations, neutral == masculine, or
// pronoun surfaces are dropped (a warning per drop when `warnings` is
// non-null).
GenderedTermTable build_term_table(const std::vector<std::string>& seed_words,
                                   const WordClassifier& classifier,
                                   const PairGenerator& pair_generator,
                                   const Neutralizer& neutralizer,
                                   const PronounTable& pronouns,
                                   std::vector<std::string>* warnings = nullptr);

}  // namespace misgender

#endif  // MISGENDER_LEXICON_HPP_
