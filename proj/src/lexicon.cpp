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

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "misgender/utf8.hpp"

namespace misgender {

namespace {

constexpr FormSlot kAllSlots[] = {
    FormSlot::kNominative, FormSlot::kObjective,
    FormSlot::kPossessiveDeterminer, FormSlot::kPossessivePronoun,
    FormSlot::kReflexive};

bool single_word(std::string_view word) {
  if (word.empty()) return false;
  return word.find(' ') == std::string_view::npos &&
         word.find('\t') == std::string_view::npos;
}

std::string strip_possessive(std::string folded) {
  auto ends_with = [&folded](std::string_view suffix) {
    return folded.size() > suffix.size() &&
           folded.compare(folded.size() - suffix.size(), suffix.size(),
                          suffix) == 0;
  };
  if (ends_with("'s")) {
    folded.erase(folded.size() - 2);
  } else if (ends_with("s'")) {
    folded.erase(folded.size() - 2);
  }
  return folded;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

PronounTable PronounTable::build(std::vector<Entry> entries) {
  PronounTable table;
  std::unordered_set<std::string> ids;
  for (Entry& entry : entries) {
    if (!ids.insert(entry.id).second) {
      throw ParseError("duplicate pronoun set id: " + entry.id);
    }
    for (FormSlot slot : kAllSlots) {
      if (entry.set.form(slot).empty()) {
        throw ParseError("pronoun set " + entry.id + ": empty form");
      }
    }
  }
  table.sets_ = std::move(entries);
  for (const Entry& entry : table.sets_) {
    for (FormSlot slot : kAllSlots) {
      table.index_[utf8::fold_utf8(entry.set.form(slot))].push_back(
          {entry.id, slot});
    }
  }
  return table;
}

PronounTable PronounTable::load(std::istream& in) {
  std::vector<Entry> entries;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != 6) {
      throw ParseError("pronoun table rows need 5 forms plus agreement: " + line);
    }
    PronounSet set{utf8::fold_utf8(cells[0]), utf8::fold_utf8(cells[1]),
                   utf8::fold_utf8(cells[2]), utf8::fold_utf8(cells[3]),
                   utf8::fold_utf8(cells[4]), agreement_from_string(cells[5])};
    entries.push_back({set.nominative, std::move(set)});
  }
  return build(std::move(entries));
}

PronounTable PronounTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pronoun table: " + path);
  return load(in);
}

const PronounSet* PronounTable::find_set(std::string_view id) const {
  for (const Entry& entry : sets_) {
    if (entry.id == id) return &entry.set;
  }
  return nullptr;
}

std::vector<PronounRef> PronounTable::lookup(std::string_view surface) const {
  auto it = index_.find(utf8::fold_utf8(surface));
  if (it == index_.end()) return {};
  return it->second;
}

bool PronounTable::contains_surface(std::string_view folded) const {
  return index_.count(std::string(folded)) > 0;
}

std::set<std::string> PronounTable::acceptable_set_ids(
    const GenderProfile& profile) const {
  std::set<std::string> ids;
  for (const Entry& entry : sets_) {
    for (const PronounSet& used : profile.pronoun_sets) {
      if (entry.set.same_paradigm(used)) {
        ids.insert(entry.id);
        break;
      }
    }
  }
  return ids;
}

std::vector<PronounRef> lookup_pronoun(const PronounTable& table,
                                       std::string_view surface) {
  return table.lookup(surface);
}

GenderedTermTable GenderedTermTable::build(std::vector<GenderedTermRow> rows,
                                           const PronounTable& pronouns) {
  GenderedTermTable table;
  table.rows_ = std::move(rows);
  for (std::size_t i = 0; i < table.rows_.size(); ++i) {
    const GenderedTermRow& row = table.rows_[i];
    for (const std::string* cell : {&row.feminine, &row.masculine, &row.neutral}) {
      if (!single_word(*cell)) {
        throw ParseError("term table row " + std::to_string(i) +
                         ": cells must be non-empty single words");
      }
    }
    if (row.feminine == row.masculine) {
      throw ParseError("term table row " + std::to_string(i) +
                       ": feminine equals masculine");
    }
    if (row.neutral == row.masculine) {
      throw ParseError("term table row " + std::to_string(i) +
                       ": neutral equals masculine");
    }
    const std::pair<const std::string*, TermCategory> cells[] = {
        {&row.feminine, TermCategory::kFeminine},
        {&row.masculine, TermCategory::kMasculine},
        {&row.neutral, TermCategory::kNeutral}};
    for (const auto& [cell, category] : cells) {
      const std::string key = utf8::fold_utf8(*cell);
      if (pronouns.contains_surface(key)) {
        throw ParseError("term table row " + std::to_string(i) +
                         ": pronoun surface '" + key + "' not allowed");
      }
      if (!table.index_.emplace(key, TermRef{i, category}).second) {
        throw ParseError("term table: surface '" + key +
                         "' maps to more than one slot");
      }
    }
  }
  return table;
}

GenderedTermTable GenderedTermTable::load(std::istream& in,
                                          const PronounTable& pronouns) {
  std::vector<GenderedTermRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    if (cells.size() != 3) {
      throw ParseError("term table rows need 3 columns: " + line);
    }
    rows.push_back({utf8::fold_utf8(cells[0]), utf8::fold_utf8(cells[1]),
                    utf8::fold_utf8(cells[2])});
  }
  return build(std::move(rows), pronouns);
}

GenderedTermTable GenderedTermTable::load_file(const std::string& path,
                                               const PronounTable& pronouns) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open term table: " + path);
  return load(in, pronouns);
}

std::optional<TermRef> GenderedTermTable::lookup(std::string_view surface) const {
  const std::string key = strip_possessive(utf8::fold_utf8(surface));
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool GenderedTermTable::contains_surface(std::string_view folded) const {
  return index_.count(strip_possessive(std::string(folded))) > 0;
}

std::optional<TermRef> lookup_gendered_term(const GenderedTermTable& table,
                                            std::string_view surface) {
  return table.lookup(surface);
}

const std::string& equivalent_term(const GenderedTermRow& row,
                                   TermCategory target) {
  switch (target) {
    case TermCategory::kFeminine:
      return row.feminine;
    case TermCategory::kMasculine:
      return row.masculine;
    case TermCategory::kNeutral:
      return row.neutral;
  }
  return row.neutral;
}

InappropriateInventory inappropriate_inventory(const PronounTable& pronouns,
                                               const GenderProfile& profile) {
  InappropriateInventory inventory;
  for (TermCategory category :
       {TermCategory::kFeminine, TermCategory::kMasculine, TermCategory::kNeutral}) {
    if (!profile.term_categories.count(category)) {
      inventory.categories.insert(category);
    }
  }
  const std::set<std::string> acceptable = pronouns.acceptable_set_ids(profile);
  for (const PronounTable::Entry& entry : pronouns.sets()) {
    if (!acceptable.count(entry.id)) {
      inventory.pronoun_set_ids.insert(entry.id);
    }
  }
  return inventory;
}

GenderedTermTable build_term_table(const std::vector<std::string>& seed_words,
                                   const WordClassifier& classifier,
                                   const PairGenerator& pair_generator,
                                   const Neutralizer& neutralizer,
                                   const PronounTable& pronouns,
                                   std::vector<std::string>* warnings) {
  auto warn = [warnings](std::string message) {
    if (warnings) warnings->push_back(std::move(message));
  };

  std::vector<std::string> feminine_seeds;
  std::vector<std::string> masculine_seeds;
  std::unordered_set<std::string> masculine_pool;
  for (const std::string& raw : seed_words) {
    const std::string word = utf8::fold_utf8(raw);
    if (!single_word(word)) continue;  // seeds filtered to single words
    if (pronouns.contains_surface(word)) {
      warn("seed '" + word + "' is a pronoun; excluded");
      continue;
    }
    if (classifier(word) == TermCategory::kFeminine) {
      feminine_seeds.push_back(word);
    } else {
      masculine_seeds.push_back(word);
      masculine_pool.insert(word);
    }
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  std::unordered_set<std::string> matched_masculine;
  for (const std::string& fem : feminine_seeds) {
    const std::string mate = utf8::fold_utf8(pair_generator(fem));
    if (!single_word(mate)) {
      warn("no single-word masculine mate for '" + fem + "'; skipped");
      continue;
    }
    if (masculine_pool.count(mate)) {
      pairs.emplace_back(fem, mate);
      matched_masculine.insert(mate);
    } else {
      warn("generated mate '" + mate + "' for '" + fem +
           "' not in masculine seed list; skipped");
    }
  }
  for (const std::string& masc : masculine_seeds) {
    if (matched_masculine.count(masc)) continue;
    const std::string mate = utf8::fold_utf8(pair_generator(masc));
    if (!single_word(mate)) {
      warn("no single-word feminine mate for '" + masc + "'; skipped");
      continue;
    }
    pairs.emplace_back(mate, masc);
  }

  std::vector<GenderedTermRow> rows;
  std::unordered_set<std::string> used_surfaces;
  for (const auto& [fem, masc] : pairs) {
    const std::string neutral = utf8::fold_utf8(neutralizer(fem, masc));
    if (!single_word(neutral)) {
      warn("no single-word neutral for '" + fem + "/" + masc + "'; skipped");
      continue;
    }
    if (neutral == masc) {
      warn("neutral for '" + fem + "/" + masc +
           "' equals the masculine word; skipped");
      continue;
    }
    if (pronouns.contains_surface(neutral)) {
      warn("neutral '" + neutral + "' is a pronoun; skipped");
      continue;
    }
    bool collision = false;
    for (const std::string* cell : {&fem, &masc, &neutral}) {
      if (used_surfaces.count(*cell)) {
        warn("surface '" + *cell + "' already used; row skipped");
        collision = true;
        break;
      }
    }
    if (collision || fem == masc) continue;
    used_surfaces.insert(fem);
    used_surfaces.insert(masc);
    used_surfaces.insert(neutral);
    rows.push_back({fem, masc, neutral});
  }
  return GenderedTermTable::build(std::move(rows), pronouns);
}

}  // namespace misgender
