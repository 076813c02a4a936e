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
// Span-preserving tokenization, sentence splitting, pronoun-slot
// tie-breaking, casing transfer and verb number agreement. Everything in
// this module is a pure function over immutable inputs.

#ifndef MISGENDER_TEXTPROC_HPP_
#define MISGENDER_TEXTPROC_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "misgender/core.hpp"

namespace misgender {

enum class TokenKind { kWord, kPunctuation, kHandle, kUrl, kOther };

struct Token {
  std::string surface;
  std::string folded;
  Span span;  // code points into the source text
  TokenKind kind = TokenKind::kWord;
  bool capitalized = false;  // first code point is uppercase
};

struct SentenceSpan {
  Span span;
  std::size_t index = 0;
};

// Bundled morphology data: irregular verb pairs, abbreviation guard list,
// contraction table and the base-verb list that gates singularization.
struct MorphTables {
  std::unordered_map<std::string, std::string> plural_of;    // is -> are
  std::unordered_map<std::string, std::string> singular_of;  // are -> is

  struct Contraction {
    std::string pronoun;  // folded pronoun part, e.g. "she"
    std::string verb;     // expanded verb, e.g. "is"
  };
  std::unordered_map<std::string, Contraction> contractions;  // folded key

  std::unordered_set<std::string> abbreviations;  // folded, no period
  std::unordered_set<std::string> verb_bases;     // present-tense base forms

  static MorphTables load(const std::filesystem::path& data_dir);
};

// Deterministic tokenizer. Words keep interior hyphens and apostrophes
// ("Philpotts-Page", "woman's"); "@name" is a single handle token; http/www
// runs are url tokens; runs of punctuation collapse into one token.
// Concatenating surfaces with the inter-token gaps reconstructs the input.
std::vector<Token> tokenize(std::string_view text);

// Rule-based splitter: terminal . ! ? (and ellipsis) end a sentence unless
// the preceding word is an abbreviation or a single character (initials,
// decimals). Whole text is one sentence when no terminator appears.
std::vector<SentenceSpan> split_sentences(std::string_view text,
                                          const MorphTables& morph);

struct SlotCandidate {
  std::string set_id;
  FormSlot slot = FormSlot::kNominative;

  friend bool operator==(const SlotCandidate&, const SlotCandidate&) = default;
};

struct SlotChoice {
  SlotCandidate candidate;
  bool tie_fallback = false;  // no rule applied; first candidate returned
};

// Picks one (set, form) among the candidates for the pronoun at
// tokens[token_index] using local context: a possessive determiner wins
// when the next word (skipping a closed adjective/adverb list) can head a
// noun phrase; a standalone slot (objective, then possessive pronoun) wins
// before punctuation, a conjunction or end of text.
SlotChoice resolve_pronoun_slot(std::size_t token_index,
                                const std::vector<Token>& tokens,
                                const std::vector<SlotCandidate>& candidates);

// Transfers the casing class of `original` onto `replacement`:
// ALL-CAPS -> ALL-CAPS, Title -> Title, anything else -> lowercase.
std::string match_case(std::string_view replacement, std::string_view original);

struct VerbAdjustment {
  std::string form;
  bool changed = false;  // false means the no-op flag
};

// Irregular table first, then suffix rules (-ies <-> -y, -es after a
// sibilant, plain -s). Singularization only applies to known base forms so
// unmarked past-tense verbs pass through unchanged.
VerbAdjustment adjust_verb_agreement(const MorphTables& morph,
                                     std::string_view verb, Agreement target);

// True for tokens the slot resolver and verb-adjacency scan skip over
// (closed adjective/adverb list plus -ly adverbs).
bool is_skippable_modifier(std::string_view folded);

// Closed list of unambiguous finite verbs used as the "next word is a
// verb" test in slot resolution.
bool is_known_verb_form(std::string_view folded);

bool is_conjunction(std::string_view folded);

}  // namespace misgender

#endif  // MISGENDER_TEXTPROC_HPP_
