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

#include "misgender/coref.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "misgender/utf8.hpp"

namespace misgender {

namespace {

// Function words and interjections that never open a name mention even
// when capitalized (sentence-initial position, shouty tweets).
const std::unordered_set<std::string>& name_stoplist() {
  static const std::unordered_set<std::string> kList = {
      "a",     "an",    "the",   "and",  "or",    "but",   "nor",   "so",
      "yet",   "while", "when",  "if",   "then",  "than",  "because", "although",
      "though", "of",   "in",    "on",   "at",    "to",    "for",   "from",
      "with",  "about", "as",    "by",   "into",  "over",  "after", "before",
      "do",    "does",  "did",   "is",   "am",    "are",   "was",   "were",
      "be",    "been",  "being", "have", "has",   "had",   "will",  "would",
      "can",   "could", "shall", "should", "may", "might", "must",  "not",
      "no",    "yes",   "i",     "you",  "we",    "it",    "this",  "that",
      "these", "those", "there", "here", "what",  "who",   "whom",  "whose",
      "which", "why",   "how",   "where", "my",   "your",  "our",   "its",
      "me",    "us",    "oh",    "wow",  "hey",   "damn",  "ugh",   "lol",
      "omg",   "yeah",  "well",  "please", "thanks", "ok",  "okay",
      "it's",  "that's", "what's", "who's", "there's", "let's",
  };
  return kList;
}

bool is_copula(const EngineContext& ctx, const std::string& folded) {
  static const std::unordered_set<std::string> kBeForms = {
      "is", "was", "are", "were", "am", "be", "been", "being"};
  if (kBeForms.count(folded)) return true;
  if (const auto* entry = ctx.contraction(folded)) {
    return kBeForms.count(entry->verb) > 0;
  }
  return false;
}

struct WorkMention {
  Mention mention;
  std::size_t sentence = 0;
  std::vector<std::string> folded_tokens;
  std::string cluster_key;
};

std::size_t sentence_of(const std::vector<SentenceSpan>& sentences, Span span) {
  for (const SentenceSpan& sentence : sentences) {
    if (span.begin >= sentence.span.begin && span.end <= sentence.span.end) {
      return sentence.index;
    }
  }
  return sentences.empty() ? 0 : sentences.back().index;
}

}  // namespace

CorefClusters resolve_heuristic(const EngineContext& ctx, std::string_view text,
                                const std::vector<Token>& tokens,
                                const GenderProfile& profile) {
  const std::vector<SentenceSpan> sentences = split_sentences(text, ctx.morph);

  auto is_pronoun_token = [&ctx](const Token& token) {
    return token.kind == TokenKind::kWord &&
           !ctx.pronoun_candidates(token.folded).empty();
  };
  auto name_eligible = [&](const Token& token) {
    return token.kind == TokenKind::kWord && token.capitalized &&
           !is_pronoun_token(token) && !name_stoplist().count(token.folded);
  };

  const DeadnameTriggers triggers = deadname_trigger_tokens(profile);
  std::unordered_set<std::string> subject_tokens(profile.name_tokens.begin(),
                                                 profile.name_tokens.end());
  subject_tokens.insert(triggers.tokens.begin(), triggers.tokens.end());

  std::vector<WorkMention> names;
  std::vector<WorkMention> pronouns;

  for (std::size_t i = 0; i < tokens.size();) {
    if (!name_eligible(tokens[i])) {
      if (is_pronoun_token(tokens[i])) {
        WorkMention mention;
        mention.mention = {tokens[i].span, MentionKind::kPronoun};
        mention.sentence = sentence_of(sentences, tokens[i].span);
        mention.folded_tokens = {tokens[i].folded};
        pronouns.push_back(std::move(mention));
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    WorkMention mention;
    while (j < tokens.size() && name_eligible(tokens[j])) {
      mention.folded_tokens.push_back(tokens[j].folded);
      ++j;
    }
    mention.mention = {{tokens[i].span.begin, tokens[j - 1].span.end},
                       MentionKind::kName};
    mention.sentence = sentence_of(sentences, mention.mention.span);
    bool subject = false;
    for (const std::string& folded : mention.folded_tokens) {
      if (subject_tokens.count(folded)) subject = true;
    }
    std::string surface_key;
    for (const std::string& folded : mention.folded_tokens) {
      surface_key += folded;
      surface_key += ' ';
    }
    mention.cluster_key = subject ? "subject" : "name:" + surface_key;
    names.push_back(std::move(mention));
    i = j;
  }

  // Pronoun antecedents: first name mention before the pronoun in its own
  // sentence, else the first name mention of the nearest earlier sentence.
  for (std::size_t p = 0; p < pronouns.size(); ++p) {
    WorkMention& pronoun = pronouns[p];
    const WorkMention* antecedent = nullptr;
    for (const WorkMention& name : names) {
      if (name.sentence == pronoun.sentence &&
          name.mention.span.end <= pronoun.mention.span.begin) {
        antecedent = &name;
        break;
      }
    }
    if (!antecedent) {
      for (std::size_t s = pronoun.sentence; s-- > 0;) {
        for (const WorkMention& name : names) {
          if (name.sentence == s) {
            antecedent = &name;
            break;
          }
        }
        if (antecedent) break;
      }
    }
    pronoun.cluster_key = antecedent ? antecedent->cluster_key
                                     : "pronoun:" + std::to_string(p);
  }

  // Predicate nominals: a gendered-term token within a few words of a
  // copula joins the cluster of the copula's nearest preceding mention.
  std::vector<WorkMention> nominals;
  std::vector<const WorkMention*> all_sorted;
  for (const WorkMention& m : names) all_sorted.push_back(&m);
  for (const WorkMention& m : pronouns) all_sorted.push_back(&m);
  std::sort(all_sorted.begin(), all_sorted.end(),
            [](const WorkMention* a, const WorkMention* b) {
              return a->mention.span < b->mention.span;
            });

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::kWord || !is_copula(ctx, tokens[i].folded)) {
      continue;
    }
    const std::size_t copula_sentence = sentence_of(sentences, tokens[i].span);
    const WorkMention* subject_mention = nullptr;
    for (const WorkMention* m : all_sorted) {
      if (m->mention.span.end <= tokens[i].span.begin &&
          m->sentence == copula_sentence) {
        subject_mention = m;  // keep scanning: want the nearest one
      }
    }
    if (!subject_mention) continue;
    int words_seen = 0;
    for (std::size_t j = i + 1; j < tokens.size() && words_seen < 4; ++j) {
      const Token& token = tokens[j];
      if (token.kind == TokenKind::kPunctuation || token.kind == TokenKind::kUrl) break;
      if (token.kind != TokenKind::kWord) continue;
      if (is_pronoun_token(token) || is_copula(ctx, token.folded)) break;
      ++words_seen;
      if (ctx.terms.lookup(token.folded).has_value()) {
        WorkMention mention;
        mention.mention = {token.span, MentionKind::kNominal};
        mention.sentence = copula_sentence;
        mention.folded_tokens = {token.folded};
        mention.cluster_key = subject_mention->cluster_key;
        nominals.push_back(std::move(mention));
        break;
      }
    }
  }

  std::map<std::string, std::vector<Mention>> grouped;
  for (const auto* pool : {&names, &pronouns, &nominals}) {
    for (const WorkMention& mention : *pool) {
      grouped[mention.cluster_key].push_back(mention.mention);
    }
  }

  CorefClusters result;
  for (auto& [key, mentions] : grouped) {
    std::sort(mentions.begin(), mentions.end(),
              [](const Mention& a, const Mention& b) { return a.span < b.span; });
    result.clusters.push_back(std::move(mentions));
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const std::vector<Mention>& a, const std::vector<Mention>& b) {
              return a.front().span < b.front().span;
            });
  return result;
}

std::vector<Span> subject_cluster(const CorefClusters& clusters,
                                  const GenderProfile& profile,
                                  std::string_view text) {
  const DeadnameTriggers triggers = deadname_trigger_tokens(profile);
  std::unordered_set<std::string> subject_tokens(profile.name_tokens.begin(),
                                                 profile.name_tokens.end());
  subject_tokens.insert(triggers.tokens.begin(), triggers.tokens.end());

  const std::u32string cps = utf8::decode(text);
  auto mention_matches = [&](const Mention& mention) {
    if (mention.span.end > cps.size()) return false;
    const std::string surface = utf8::encode(
        cps.substr(mention.span.begin, mention.span.end - mention.span.begin));
    for (const Token& token : tokenize(surface)) {
      if (token.kind == TokenKind::kWord && subject_tokens.count(token.folded)) {
        return true;
      }
    }
    return false;
  };

  std::vector<Span> spans;
  for (const auto& cluster : clusters.clusters) {
    if (std::any_of(cluster.begin(), cluster.end(), mention_matches)) {
      for (const Mention& mention : cluster) spans.push_back(mention.span);
    }
  }
  std::sort(spans.begin(), spans.end());
  return spans;
}

}  // namespace misgender
