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

#include <algorithm>
#include <fstream>

#include "misgender/utf8.hpp"

namespace misgender {

namespace {

bool is_word_char(char32_t cp) {
  return utf8::is_letter(cp) || utf8::is_digit(cp) || cp == U'_';
}

bool is_word_joiner(char32_t cp) {
  return cp == U'-' || cp == U'\'' || cp == 0x2019;
}

bool is_handle_char(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') ||
         utf8::is_digit(cp) || cp == U'_';
}

bool starts_url(const std::u32string& cps, std::size_t i) {
  static const std::u32string kPrefixes[] = {U"http://", U"https://", U"www."};
  for (const auto& prefix : kPrefixes) {
    if (cps.compare(i, prefix.size(), prefix) == 0) return true;
  }
  return false;
}

// ASCII punctuation plus the typographic marks common in social media.
bool is_common_punct(char32_t cp) {
  if (cp < 0x80) return !utf8::is_space(cp) && !is_word_char(cp);
  return cp == 0x2018 || cp == 0x2019 || cp == 0x201C || cp == 0x201D ||
         cp == 0x2013 || cp == 0x2014 || cp == 0x2026 || cp == 0x00A1 ||
         cp == 0x00BF || cp == 0x00AB || cp == 0x00BB;
}

Token make_token(const std::u32string& cps, std::size_t begin, std::size_t end,
                 TokenKind kind) {
  Token token;
  token.span = {begin, end};
  std::u32string piece = cps.substr(begin, end - begin);
  token.surface = utf8::encode(piece);
  for (auto& cp : piece) cp = utf8::fold(cp);
  token.folded = utf8::encode(piece);
  token.kind = kind;
  token.capitalized = kind == TokenKind::kWord && utf8::is_upper(cps[begin]);
  return token;
}

const std::unordered_set<std::string>& skippable_modifiers() {
  static const std::unordered_set<std::string> kList = {
      "own",  "very",  "quite",    "really", "truly", "former",
      "late", "dear",  "beloved",  "favorite", "new", "old",
      "young", "little", "big",    "great",  "good", "best",
      "first", "last", "not",      "never",  "always", "often",
      "still", "also", "now",      "then",   "just", "soon",
      "already", "again",
  };
  return kList;
}

const std::unordered_set<std::string>& known_verb_forms() {
  static const std::unordered_set<std::string> kList = {
      "is",     "am",     "are",    "was",    "were",   "be",      "been",
      "being",  "has",    "have",   "had",    "does",   "do",      "did",
      "will",   "would",  "can",    "could",  "shall",  "should",  "may",
      "might",  "must",   "says",   "said",   "goes",   "went",    "seems",
      "seemed", "gets",   "got",    "makes",  "made",   "takes",   "took",
      "knows",  "knew",   "thinks", "thought","sees",   "saw",     "comes",
      "came",   "wants",  "wanted", "gives",  "gave",   "uses",    "finds",
      "found",  "tells",  "told",   "asks",   "asked",  "feels",   "felt",
      "tries",  "tried",  "keeps",  "kept",   "begins", "began",   "becomes",
      "became", "brings", "brought","writes", "wrote",  "sits",    "sat",
      "stands", "stood",  "loses",  "lost",   "pays",   "paid",    "meets",
      "met",    "leads",  "led",    "speaks", "spoke",  "wins",    "won",
      "believes", "believed", "credits", "credited", "sings", "sang",
      "isn't",  "wasn't", "hasn't", "doesn't", "aren't", "weren't",
      "haven't", "don't", "didn't", "won't",  "can't",  "couldn't",
      "wouldn't", "shouldn't",
  };
  return kList;
}

const std::unordered_set<std::string>& conjunctions() {
  static const std::unordered_set<std::string> kList = {
      "and", "or", "but", "nor", "so", "yet", "while", "because",
      "although", "though", "when", "if", "than",
  };
  return kList;
}

// Words that cannot head a noun phrase after a possessive determiner:
// prepositions, particles and bare time adverbs.
const std::unordered_set<std::string>& np_blockers() {
  static const std::unordered_set<std::string> kList = {
      "at",     "in",     "on",      "to",      "for",     "with",
      "by",     "about",  "from",    "into",    "onto",    "over",
      "under",  "off",    "out",     "up",      "down",    "of",
      "as",     "after",  "before",  "during",  "against", "between",
      "through","without","within",  "around",  "near",    "like",
      "since",  "until",  "till",    "toward",  "towards", "upon",
      "yesterday", "today", "tomorrow", "anymore", "away",  "back",
      "too",    "instead", "twice",  "once",    "there",   "here",
  };
  return kList;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_sibilant_stem(std::string_view stem) {
  return ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
         ends_with(stem, "sh") || ends_with(stem, "ch");
}

bool is_consonant(char c) {
  return c >= 'a' && c <= 'z' && c != 'a' && c != 'e' && c != 'i' &&
         c != 'o' && c != 'u';
}

std::unordered_map<std::string, std::string> read_two_column_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::unordered_map<std::string, std::string> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("malformed row in " + path.string() + ": " + line);
    }
    out.emplace(line.substr(0, comma), line.substr(comma + 1));
  }
  return out;
}

}  // namespace

MorphTables MorphTables::load(const std::filesystem::path& data_dir) {
  MorphTables morph;
  for (const auto& [sg, pl] : read_two_column_csv(data_dir / "irregular_verbs.csv")) {
    morph.plural_of.emplace(sg, pl);
    morph.singular_of.emplace(pl, sg);
  }

  {
    std::ifstream in(data_dir / "contractions.csv");
    if (!in) throw ConfigError("cannot open contractions.csv under " + data_dir.string());
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (header) {
        header = false;
        continue;
      }
      if (line.empty()) continue;
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ParseError("malformed contraction row: " + line);
      }
      morph.contractions.emplace(
          line.substr(0, c1),
          Contraction{line.substr(c1 + 1, c2 - c1 - 1), line.substr(c2 + 1)});
    }
  }

  auto read_word_list = [](const std::filesystem::path& path,
                           std::unordered_set<std::string>& into) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      into.insert(utf8::fold_utf8(line));
    }
  };
  read_word_list(data_dir / "abbreviations.txt", morph.abbreviations);
  read_word_list(data_dir / "verb_bases.txt", morph.verb_bases);
  return morph;
}

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    const char32_t cp = cps[i];
    if (utf8::is_space(cp)) {
      ++i;
      continue;
    }
    if (starts_url(cps, i)) {
      std::size_t j = i;
      while (j < n && !utf8::is_space(cps[j])) ++j;
      tokens.push_back(make_token(cps, i, j, TokenKind::kUrl));
      i = j;
      continue;
    }
    if (cp == U'@' && i + 1 < n && is_handle_char(cps[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_handle_char(cps[j])) ++j;
      tokens.push_back(make_token(cps, i, j, TokenKind::kHandle));
      i = j;
      continue;
    }
    if (is_word_char(cp)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_word_char(cps[j])) {
          ++j;
        } else if (is_word_joiner(cps[j]) && j + 1 < n && is_word_char(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      // Trailing possessive apostrophe stays attached: "sisters'".
      if (j < n && (cps[j] == U'\'' || cps[j] == 0x2019) && j > i &&
          cps[j - 1] == U's') {
        ++j;
      }
      tokens.push_back(make_token(cps, i, j, TokenKind::kWord));
      i = j;
      continue;
    }
    // Group a run of punctuation / symbols into one token.
    const bool punct = is_common_punct(cp);
    std::size_t j = i + 1;
    while (j < n && !utf8::is_space(cps[j]) && !is_word_char(cps[j]) &&
           cps[j] != U'@' && is_common_punct(cps[j]) == punct) {
      ++j;
    }
    tokens.push_back(
        make_token(cps, i, j, punct ? TokenKind::kPunctuation : TokenKind::kOther));
    i = j;
  }
  return tokens;
}

std::vector<SentenceSpan> split_sentences(std::string_view text,
                                          const MorphTables& morph) {
  const std::vector<Token> tokens = tokenize(text);
  std::vector<SentenceSpan> sentences;
  if (tokens.empty()) return sentences;

  auto is_terminal = [](const Token& token) {
    if (token.kind != TokenKind::kPunctuation) return false;
    for (char32_t cp : utf8::decode(token.surface)) {
      if (cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026) return true;
    }
    return false;
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_terminal(tokens[i])) continue;
    bool guard = false;
    if (tokens[i].surface == "." && i > 0 &&
        tokens[i - 1].kind == TokenKind::kWord) {
      const std::string& prev = tokens[i - 1].folded;
      guard = morph.abbreviations.count(prev) > 0 ||
              utf8::count_code_points(prev) == 1;
    }
    if (guard) continue;
    sentences.push_back(
        {{tokens[start].span.begin, tokens[i].span.end}, sentences.size()});
    start = i + 1;
  }
  if (start < tokens.size()) {
    sentences.push_back(
        {{tokens[start].span.begin, tokens.back().span.end}, sentences.size()});
  }
  return sentences;
}

SlotChoice resolve_pronoun_slot(std::size_t token_index,
                                const std::vector<Token>& tokens,
                                const std::vector<SlotCandidate>& candidates) {
  if (candidates.empty()) {
    throw ContractViolation("resolve_pronoun_slot: empty candidate list");
  }
  if (candidates.size() == 1) return {candidates[0], false};

  auto find_slot = [&](FormSlot slot) -> const SlotCandidate* {
    for (const auto& candidate : candidates) {
      if (candidate.slot == slot) return &candidate;
    }
    return nullptr;
  };

  // Next token after the closed modifier list.
  const Token* next = nullptr;
  for (std::size_t j = token_index + 1; j < tokens.size(); ++j) {
    if (tokens[j].kind == TokenKind::kWord &&
        is_skippable_modifier(tokens[j].folded)) {
      continue;
    }
    next = &tokens[j];
    break;
  }

  const bool boundary =
      next == nullptr || next->kind == TokenKind::kPunctuation ||
      (next->kind == TokenKind::kWord && is_conjunction(next->folded));
  if (boundary) {
    if (const auto* c = find_slot(FormSlot::kObjective)) return {*c, false};
    if (const auto* c = find_slot(FormSlot::kPossessivePronoun)) return {*c, false};
  } else if (next->kind == TokenKind::kWord) {
    const bool can_head_np = !is_known_verb_form(next->folded) &&
                             !np_blockers().count(next->folded);
    if (can_head_np) {
      if (const auto* c = find_slot(FormSlot::kPossessiveDeterminer)) {
        return {*c, false};
      }
    } else if (np_blockers().count(next->folded)) {
      // Before a preposition or particle a standalone slot is the reading.
      if (const auto* c = find_slot(FormSlot::kObjective)) return {*c, false};
      if (const auto* c = find_slot(FormSlot::kPossessivePronoun)) return {*c, false};
    }
  }
  return {candidates[0], true};
}

std::string match_case(std::string_view replacement, std::string_view original) {
  if (replacement.empty() || original.empty()) {
    throw ContractViolation("match_case: empty argument");
  }
  const std::u32string orig = utf8::decode(original);
  std::u32string repl = utf8::decode(replacement);
  for (auto& cp : repl) cp = utf8::fold(cp);

  std::size_t cased = 0, uppers = 0;
  for (char32_t cp : orig) {
    if (utf8::is_letter(cp)) {
      ++cased;
      if (utf8::is_upper(cp)) ++uppers;
    }
  }
  if (cased >= 2 && uppers == cased) {
    for (auto& cp : repl) cp = utf8::to_upper(cp);
  } else if (!orig.empty() && utf8::is_upper(orig[0])) {
    repl[0] = utf8::to_upper(repl[0]);
  }
  return utf8::encode(repl);
}

VerbAdjustment adjust_verb_agreement(const MorphTables& morph,
                                     std::string_view verb, Agreement target) {
  const std::string folded = utf8::fold_utf8(verb);
  if (target == Agreement::kPluralVerb) {
    if (auto it = morph.plural_of.find(folded); it != morph.plural_of.end()) {
      return {it->second, it->second != folded};
    }
    if (morph.singular_of.count(folded)) return {folded, false};  // already plural
    // Strip a third-person-singular suffix.
    if (ends_with(folded, "ies") && folded.size() > 4) {
      return {folded.substr(0, folded.size() - 3) + "y", true};
    }
    if (ends_with(folded, "es")) {
      std::string stem = folded.substr(0, folded.size() - 2);
      if (is_sibilant_stem(stem)) return {stem, true};
    }
    if (ends_with(folded, "s") && folded.size() > 2 && !ends_with(folded, "ss") &&
        !ends_with(folded, "us") && !ends_with(folded, "is") &&
        !ends_with(folded, "'s")) {
      return {folded.substr(0, folded.size() - 1), true};
    }
    return {folded, false};
  }

  if (auto it = morph.singular_of.find(folded); it != morph.singular_of.end()) {
    return {it->second, it->second != folded};
  }
  if (morph.plural_of.count(folded)) return {folded, false};  // already singular
  // Only known base forms take the suffix; unmarked forms (past tense,
  // non-verbs) pass through with the no-op flag.
  if (!morph.verb_bases.count(folded)) return {folded, false};
  if (folded.size() >= 2 && folded.back() == 'y' &&
      is_consonant(folded[folded.size() - 2])) {
    return {folded.substr(0, folded.size() - 1) + "ies", true};
  }
  if (is_sibilant_stem(folded)) return {folded + "es", true};
  return {folded + "s", true};
}

bool is_skippable_modifier(std::string_view folded) {
  if (skippable_modifiers().count(std::string(folded))) return true;
  return ends_with(folded, "ly") && folded.size() > 3;
}

bool is_known_verb_form(std::string_view folded) {
  return known_verb_forms().count(std::string(folded)) > 0;
}

bool is_conjunction(std::string_view folded) {
  return conjunctions().count(std::string(folded)) > 0;
}

}  // namespace misgender
