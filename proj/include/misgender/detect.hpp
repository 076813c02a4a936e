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
// Misgendering detectors: a naive token-trigger rule, a coreference-gated
// rule and a score-threshold classifier. Rule modes are pure functions and
// report a Misgendering label exactly when they found evidence.

#ifndef MISGENDER_DETECT_HPP_
#define MISGENDER_DETECT_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/coref.hpp"
#include "misgender/engine.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

enum class EvidenceKind { kDeadname, kPronoun, kGenderedTerm };

struct Evidence {
  Span span;
  std::string surface;
  EvidenceKind kind = EvidenceKind::kDeadname;
  std::string detail;  // offending category or pronoun set ids

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

enum class DetectMode { kNaive, kCoref, kThreshold, kLlm };

struct DetectionResult {
  Label label = Label::kNoMisgendering;
  std::vector<Evidence> evidence;
  DetectMode mode = DetectMode::kNaive;
};

std::string_view to_string(DetectMode mode);
std::string_view to_string(EvidenceKind kind);

// Misgendering iff any token matches a deadname trigger, a gendered term in
// an inappropriate category, or a pronoun whose candidate paradigms are all
// inappropriate. A surface shared with any acceptable paradigm never
// triggers.
DetectionResult detect_naive(const EngineContext& ctx,
                             const GenderProfile& profile,
                             std::string_view text);

// Deadname triggers fire anywhere; pronoun and gendered-term triggers only
// inside the subject's coreference cluster.
DetectionResult detect_coref(const EngineContext& ctx,
                             const GenderProfile& profile,
                             std::string_view text,
                             const CorefClusters& clusters);

// Misgendering iff score > threshold (strict). Both values must be in
// [0, 1].
DetectionResult detect_threshold(double score, double threshold);

using ClusterProviderFn = std::function<CorefClusters(const std::string&)>;

// Runs a rule mode over context + sentence but keeps only evidence inside
// the sentence region (spans are re-based to the sentence). mode must be
// kNaive or kCoref; clusters come from `provider` when given, else from the
// heuristic resolver.
DetectionResult detect_with_context(const EngineContext& ctx,
                                    const GenderProfile& profile,
                                    std::string_view sentence,
                                    std::string_view context, DetectMode mode,
                                    const ClusterProviderFn& provider = nullptr);

}  // namespace misgender

#endif  // MISGENDER_DETECT_HPP_
