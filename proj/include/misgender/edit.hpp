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
// Rule-based correction of detected misgendering. In order: deadname spans
// become the current name, inappropriate pronouns become the matching form
// of the profile's first pronoun set (with verb agreement fixed next to a
// replaced nominative), and inappropriate gendered terms become their
// acceptable equivalents. The optional coreference-gated mode restricts
// pronoun/term edits to the subject's cluster; deadname edits are never
// gated.

#ifndef MISGENDER_EDIT_HPP_
#define MISGENDER_EDIT_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/coref.hpp"
#include "misgender/engine.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

enum class EditReason { kDeadname, kPronoun, kVerbAgreement, kGenderedTerm };

std::string_view to_string(EditReason reason);

struct Edit {
  Span span;
  std::string original;
  std::string replacement;
  EditReason reason = EditReason::kDeadname;

  friend bool operator==(const Edit&, const Edit&) = default;
};

enum class EditMode { kUngated, kCorefGated };

struct EditResult {
  std::string edited_text;
  std::vector<Edit> edits;  // sorted by span, non-overlapping
  EditMode mode = EditMode::kUngated;
  std::vector<std::string> diagnostics;
};

// clusters == nullptr runs ungated; otherwise pronoun/term edits are gated
// to subject_cluster(*clusters).
EditResult correct(const EngineContext& ctx, const GenderProfile& profile,
                   std::string_view text,
                   const CorefClusters* clusters = nullptr);

using ClustersProvider = std::function<CorefClusters(const std::string&)>;

// Edits a biography one sentence at a time, in order. For the gated mode
// the previously edited prefix is prepended when computing clusters, so
// later sentences can gate on earlier (already corrected) context.
std::vector<EditResult> correct_sentencewise(const EngineContext& ctx,
                                             const GenderProfile& profile,
                                             std::string_view biography,
                                             const ClustersProvider& provider,
                                             bool gated);

// Splices per-sentence edited texts back into the original inter-sentence
// whitespace. Companion to correct_sentencewise.
std::string reassemble_sentences(std::string_view biography,
                                 const std::vector<SentenceSpan>& sentences,
                                 const std::vector<EditResult>& results);

}  // namespace misgender

#endif  // MISGENDER_EDIT_HPP_
