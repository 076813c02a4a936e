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

#include "misgender/detect.hpp"

#include <algorithm>

#include "misgender/utf8.hpp"

namespace misgender {

namespace {

// Shared trigger scan for the two rule modes. When `subject_spans` is
// non-null, pronoun and gendered-term triggers must fall inside one of the
// spans; deadname triggers are unconditional in both modes.
std::vector<Evidence> scan_triggers(const EngineContext& ctx,
                                    const GenderProfile& profile,
                                    const std::vector<Token>& tokens,
                                    const std::vector<Span>* subject_spans) {
  const DeadnameTriggers deadname = deadname_trigger_tokens(profile);
  const std::set<std::string> acceptable_sets =
      ctx.pronouns.acceptable_set_ids(profile);
  const InappropriateInventory inventory =
      inappropriate_inventory(ctx.pronouns, profile);

  auto gated_out = [subject_spans](Span span) {
    if (!subject_spans) return false;
    return std::none_of(subject_spans->begin(), subject_spans->end(),
                        [span](Span outer) { return outer.contains(span); });
  };

  std::vector<Evidence> evidence;
  for (const Token& token : tokens) {
    if (token.kind != TokenKind::kWord) continue;

    if (deadname.tokens.count(token.folded)) {
      evidence.push_back(
          {token.span, token.surface, EvidenceKind::kDeadname, "deadname"});
      continue;
    }

    const std::vector<PronounRef> candidates = ctx.pronoun_candidates(token.folded);
    if (!candidates.empty()) {
      const bool any_acceptable =
          std::any_of(candidates.begin(), candidates.end(),
                      [&acceptable_sets](const PronounRef& ref) {
                        return acceptable_sets.count(ref.set_id) > 0;
                      });
      if (!any_acceptable && !gated_out(token.span)) {
        std::string sets;
        std::vector<std::string> seen;
        for (const PronounRef& ref : candidates) {
          if (std::find(seen.begin(), seen.end(), ref.set_id) != seen.end()) {
            continue;  // same set listed for two slots
          }
          seen.push_back(ref.set_id);
          if (!sets.empty()) sets += "+";
          sets += ref.set_id;
        }
        evidence.push_back(
            {token.span, token.surface, EvidenceKind::kPronoun, sets});
      }
      continue;
    }

    if (const auto ref = ctx.terms.lookup(token.folded)) {
      if (inventory.categories.count(ref->category) && !gated_out(token.span)) {
        evidence.push_back({token.span, token.surface,
                            EvidenceKind::kGenderedTerm,
                            std::string(to_string(ref->category))});
      }
    }
  }
  return evidence;
}

DetectionResult from_evidence(std::vector<Evidence> evidence, DetectMode mode) {
  DetectionResult result;
  result.mode = mode;
  result.evidence = std::move(evidence);
  result.label = result.evidence.empty() ? Label::kNoMisgendering
                                         : Label::kMisgendering;
  return result;
}

}  // namespace

std::string_view to_string(DetectMode mode) {
  switch (mode) {
    case DetectMode::kNaive:
      return "naive";
    case DetectMode::kCoref:
      return "coref";
    case DetectMode::kThreshold:
      return "threshold";
    case DetectMode::kLlm:
      return "llm";
  }
  return "";
}

std::string_view to_string(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::kDeadname:
      return "deadname";
    case EvidenceKind::kPronoun:
      return "pronoun";
    case EvidenceKind::kGenderedTerm:
      return "gendered-term";
  }
  return "";
}

DetectionResult detect_naive(const EngineContext& ctx,
                             const GenderProfile& profile,
                             std::string_view text) {
  return from_evidence(scan_triggers(ctx, profile, tokenize(text), nullptr),
                       DetectMode::kNaive);
}

DetectionResult detect_coref(const EngineContext& ctx,
                             const GenderProfile& profile,
                             std::string_view text,
                             const CorefClusters& clusters) {
  const std::vector<Span> spans = subject_cluster(clusters, profile, text);
  return from_evidence(scan_triggers(ctx, profile, tokenize(text), &spans),
                       DetectMode::kCoref);
}

DetectionResult detect_threshold(double score, double threshold) {
  if (score < 0.0 || score > 1.0 || threshold < 0.0 || threshold > 1.0) {
    throw ContractViolation("detect_threshold: values must be in [0, 1]");
  }
  DetectionResult result;
  result.mode = DetectMode::kThreshold;
  result.label =
      score > threshold ? Label::kMisgendering : Label::kNoMisgendering;
  return result;
}

DetectionResult detect_with_context(const EngineContext& ctx,
                                    const GenderProfile& profile,
                                    std::string_view sentence,
                                    std::string_view context, DetectMode mode,
                                    const ClusterProviderFn& provider) {
  if (mode != DetectMode::kNaive && mode != DetectMode::kCoref) {
    throw ContractViolation("detect_with_context: rule modes only");
  }
  std::string full;
  std::size_t offset = 0;
  if (context.empty()) {
    full = std::string(sentence);
  } else {
    full = std::string(context) + " " + std::string(sentence);
    offset = utf8::count_code_points(context) + 1;
  }

  DetectionResult inner;
  if (mode == DetectMode::kNaive) {
    inner = detect_naive(ctx, profile, full);
  } else if (provider) {
    inner = detect_coref(ctx, profile, full, provider(full));
  } else {
    const std::vector<Token> tokens = tokenize(full);
    inner = detect_coref(ctx, profile, full,
                         resolve_heuristic(ctx, full, tokens, profile));
  }

  std::vector<Evidence> kept;
  for (Evidence& item : inner.evidence) {
    if (item.span.begin >= offset) {
      item.span.begin -= offset;
      item.span.end -= offset;
      kept.push_back(std::move(item));
    }
  }
  return from_evidence(std::move(kept), mode);
}

}  // namespace misgender
