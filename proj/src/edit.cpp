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

#include "misgender/edit.hpp"

#include <algorithm>
#include <unordered_set>

#include "misgender/utf8.hpp"

namespace misgender {

namespace {

bool folded_has_possessive(const std::string& folded) {
  return folded.size() > 2 && (folded.compare(folded.size() - 2, 2, "'s") == 0 ||
                               folded.compare(folded.size() - 2, 2, "s'") == 0);
}

// Names keep their canonical casing; only an all-caps original is shouted
// back ("ELLEN" -> "ELLIOT"). match_case would lowercase "Page".
std::string name_case(const std::string& name, std::string_view original) {
  const std::u32string orig = utf8::decode(original);
  std::size_t cased = 0, uppers = 0;
  for (char32_t cp : orig) {
    if (utf8::is_letter(cp)) {
      ++cased;
      if (utf8::is_upper(cp)) ++uppers;
    }
  }
  if (cased >= 2 && uppers == cased) {
    std::u32string out = utf8::decode(name);
    for (char32_t& cp : out) cp = utf8::to_upper(cp);
    return utf8::encode(out);
  }
  return name;
}

// The edit target for gendered terms: neutral when acceptable, otherwise
// the profile's first acceptable category.
TermCategory term_target(const GenderProfile& profile) {
  if (profile.term_categories.count(TermCategory::kNeutral)) {
    return TermCategory::kNeutral;
  }
  return *profile.term_categories.begin();
}

struct CandidateEdit {
  Edit edit;
  int priority = 0;  // lower wins on span ties
};

EditResult correct_impl(const EngineContext& ctx, const GenderProfile& profile,
                        std::string_view text,
                        const std::vector<Span>* gated_spans, EditMode mode) {
  const std::u32string cps = utf8::decode(text);
  const std::vector<Token> tokens = tokenize(text);
  const DeadnameTriggers deadname = deadname_trigger_tokens(profile);
  const std::set<std::string> acceptable_sets =
      ctx.pronouns.acceptable_set_ids(profile);
  const InappropriateInventory inventory =
      inappropriate_inventory(ctx.pronouns, profile);
  const PronounSet& target_set = profile.pronoun_sets.front();

  auto surface_at = [&cps](Span span) {
    return utf8::encode(cps.substr(span.begin, span.end - span.begin));
  };
  auto gated_out = [gated_spans](Span span) {
    if (!gated_spans) return false;
    return std::none_of(gated_spans->begin(), gated_spans->end(),
                        [span](Span outer) { return outer.contains(span); });
  };
  // A replacement must never introduce a fresh trigger.
  auto introduces_trigger = [&ctx](const std::string& word) {
    const std::string folded = utf8::fold_utf8(word);
    return ctx.terms.contains_surface(folded) ||
           ctx.pronouns.contains_surface(folded);
  };

  std::vector<CandidateEdit> candidates;
  std::vector<std::string> diagnostics;
  std::unordered_set<std::size_t> consumed;  // token indices inside deadname runs

  // (1) Deadname spans -> current name. A full-phrase match becomes the
  // full name, a partial match becomes the given name.
  const std::vector<Token> name_tokens = tokenize(profile.name);
  std::string given_name;
  for (const Token& token : name_tokens) {
    if (token.kind == TokenKind::kWord) {
      given_name = token.surface;
      break;
    }
  }
  for (std::size_t i = 0; i < tokens.size();) {
    if (tokens[i].kind != TokenKind::kWord ||
        !deadname.tokens.count(tokens[i].folded)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < tokens.size() && tokens[j].kind == TokenKind::kWord &&
           deadname.tokens.count(tokens[j].folded)) {
      consumed.insert(j);
      ++j;
    }
    const Span span{tokens[i].span.begin, tokens[j - 1].span.end};
    const std::string original = surface_at(span);
    const bool full_phrase =
        deadname.phrase && utf8::normalize_key(original) == *deadname.phrase;
    const std::string base = full_phrase ? profile.name : given_name;
    candidates.push_back(
        {{span, original, name_case(base, original), EditReason::kDeadname}, 0});
    i = j;
  }

  // (2) Pronouns -> same form slot of the profile's first set; (3) the
  // finite verb after a replaced nominative follows its agreement class.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (consumed.count(i) || tokens[i].kind != TokenKind::kWord) continue;
    const Token& token = tokens[i];

    const std::vector<PronounRef> refs = ctx.pronoun_candidates(token.folded);
    if (!refs.empty()) {
      const bool any_acceptable =
          std::any_of(refs.begin(), refs.end(), [&](const PronounRef& ref) {
            return acceptable_sets.count(ref.set_id) > 0;
          });
      if (any_acceptable || gated_out(token.span)) continue;

      const MorphTables::Contraction* contraction =
          ctx.pronouns.lookup(token.folded).empty() ? ctx.contraction(token.folded)
                                                    : nullptr;
      if (contraction) {
        // Contracted nominative+verb: expand with the target paradigm.
        const VerbAdjustment verb = adjust_verb_agreement(
            ctx.morph, contraction->verb, target_set.agreement);
        const std::string replacement = match_case(
            target_set.nominative + " " + verb.form, token.surface);
        candidates.push_back(
            {{token.span, token.surface, replacement, EditReason::kPronoun}, 1});
        continue;
      }

      std::vector<SlotCandidate> slots;
      slots.reserve(refs.size());
      for (const PronounRef& ref : refs) slots.push_back({ref.set_id, ref.slot});
      const SlotChoice choice = resolve_pronoun_slot(i, tokens, slots);
      if (choice.tie_fallback) {
        diagnostics.push_back("slot tie for '" + token.surface +
                              "'; using first candidate");
      }
      const std::string& form = target_set.form(choice.candidate.slot);
      candidates.push_back(
          {{token.span, token.surface, match_case(form, token.surface),
            EditReason::kPronoun},
           1});

      if (choice.candidate.slot == FormSlot::kNominative) {
        const PronounSet* original_set =
            ctx.pronouns.find_set(choice.candidate.set_id);
        if (original_set && original_set->agreement != target_set.agreement) {
          for (std::size_t j = i + 1; j < tokens.size(); ++j) {
            const Token& after = tokens[j];
            if (after.kind != TokenKind::kWord) break;
            if (is_skippable_modifier(after.folded)) continue;
            const VerbAdjustment verb = adjust_verb_agreement(
                ctx.morph, after.folded, target_set.agreement);
            if (verb.changed && !introduces_trigger(verb.form)) {
              candidates.push_back({{after.span, after.surface,
                                     match_case(verb.form, after.surface),
                                     EditReason::kVerbAgreement},
                                    2});
            } else if (verb.changed) {
              diagnostics.push_back("skipped verb adjustment to '" + verb.form +
                                    "': would introduce a trigger");
            }
            break;
          }
        }
      }
      continue;
    }

    // (4) Gendered terms -> equivalent in an acceptable category.
    const auto ref = ctx.terms.lookup(token.folded);
    if (!ref || !inventory.categories.count(ref->category) ||
        gated_out(token.span)) {
      continue;
    }
    const GenderedTermRow& row = ctx.terms.rows()[ref->row];
    const std::string& equivalent = equivalent_term(row, term_target(profile));
    std::string replacement = match_case(equivalent, token.surface);
    if (folded_has_possessive(token.folded)) {
      const std::u32string surface_cps = utf8::decode(token.surface);
      replacement += utf8::encode(
          std::u32string(surface_cps.end() - 2, surface_cps.end()));
    }
    candidates.push_back(
        {{token.span, token.surface, replacement, EditReason::kGenderedTerm}, 3});
  }

  // Overlaps: longest match wins, shorter span dropped with a diagnostic.
  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateEdit& a, const CandidateEdit& b) {
              if (a.edit.span.begin != b.edit.span.begin) {
                return a.edit.span.begin < b.edit.span.begin;
              }
              if (a.edit.span.length() != b.edit.span.length()) {
                return a.edit.span.length() > b.edit.span.length();
              }
              return a.priority < b.priority;
            });
  std::vector<Edit> edits;
  for (CandidateEdit& candidate : candidates) {
    if (!edits.empty() && edits.back().span.overlaps(candidate.edit.span)) {
      diagnostics.push_back("dropped overlapping edit at [" +
                            std::to_string(candidate.edit.span.begin) + ", " +
                            std::to_string(candidate.edit.span.end) + ")");
      continue;
    }
    edits.push_back(std::move(candidate.edit));
  }

  std::u32string edited = cps;
  for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
    edited.replace(it->span.begin, it->span.length(),
                   utf8::decode(it->replacement));
  }

  EditResult result;
  result.edited_text = utf8::encode(edited);
  result.edits = std::move(edits);
  result.mode = mode;
  result.diagnostics = std::move(diagnostics);
  return result;
}

}  // namespace

std::string_view to_string(EditReason reason) {
  switch (reason) {
    case EditReason::kDeadname:
      return "deadname";
    case EditReason::kPronoun:
      return "pronoun";
    case EditReason::kVerbAgreement:
      return "verb-agreement";
    case EditReason::kGenderedTerm:
      return "gendered-term";
  }
  return "";
}

EditResult correct(const EngineContext& ctx, const GenderProfile& profile,
                   std::string_view text, const CorefClusters* clusters) {
  if (profile.pronoun_sets.empty()) {
    throw ContractViolation("correct: profile has no pronoun sets");
  }
  if (!clusters) {
    return correct_impl(ctx, profile, text, nullptr, EditMode::kUngated);
  }
  const std::vector<Span> spans = subject_cluster(*clusters, profile, text);
  return correct_impl(ctx, profile, text, &spans, EditMode::kCorefGated);
}

std::vector<EditResult> correct_sentencewise(const EngineContext& ctx,
                                             const GenderProfile& profile,
                                             std::string_view biography,
                                             const ClustersProvider& provider,
                                             bool gated) {
  const std::vector<SentenceSpan> sentences =
      split_sentences(biography, ctx.morph);
  const std::u32string cps = utf8::decode(biography);

  std::vector<EditResult> results;
  std::string edited_prefix;
  for (const SentenceSpan& sentence : sentences) {
    const std::string sentence_text = utf8::encode(
        cps.substr(sentence.span.begin, sentence.span.length()));
    if (!gated) {
      results.push_back(
          correct_impl(ctx, profile, sentence_text, nullptr, EditMode::kUngated));
    } else {
      std::string full = edited_prefix.empty()
                             ? sentence_text
                             : edited_prefix + " " + sentence_text;
      const std::size_t offset =
          edited_prefix.empty() ? 0
                                : utf8::count_code_points(edited_prefix) + 1;
      const CorefClusters clusters = provider(full);
      std::vector<Span> spans = subject_cluster(clusters, profile, full);
      std::vector<Span> local;
      for (const Span& span : spans) {
        if (span.begin >= offset) {
          local.push_back({span.begin - offset, span.end - offset});
        }
      }
      results.push_back(correct_impl(ctx, profile, sentence_text, &local,
                                     EditMode::kCorefGated));
    }
    if (!edited_prefix.empty()) edited_prefix += " ";
    edited_prefix += results.back().edited_text;
  }
  return results;
}

std::string reassemble_sentences(std::string_view biography,
                                 const std::vector<SentenceSpan>& sentences,
                                 const std::vector<EditResult>& results) {
  if (sentences.size() != results.size()) {
    throw ContractViolation("reassemble_sentences: size mismatch");
  }
  const std::u32string cps = utf8::decode(biography);
  std::u32string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out += cps.substr(cursor, sentences[i].span.begin - cursor);
    out += utf8::decode(results[i].edited_text);
    cursor = sentences[i].span.end;
  }
  out += cps.substr(cursor);
  return utf8::encode(out);
}

}  // namespace misgender
