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
// Detection metrics per domain and automated edit-quality proxies.
// Misgendering is the positive class throughout.

#ifndef MISGENDER_EVAL_HPP_
#define MISGENDER_EVAL_HPP_

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "misgender/corpus.hpp"
#include "misgender/detect.hpp"
#include "misgender/edit.hpp"

namespace misgender {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

struct DomainMetrics {
  ConfusionCounts counts;
  double accuracy = 0.0;   // percentages, un-rounded
  double precision = 0.0;  // 0 when tp+fp == 0, with the flag below set
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
};

struct MetricsReport {
  std::map<Domain, DomainMetrics> per_domain;
  DomainMetrics overall;
};

using LabeledPair = std::tuple<Label, Label, Domain>;  // gold, predicted, domain

MetricsReport compute_metrics(const std::vector<LabeledPair>& pairs);

// Spans of `original` (token-level LCS diff) that differ from `corrected`.
std::vector<Span> diff_spans(std::string_view original,
                             std::string_view corrected);

struct EditOutcome {
  std::string id;
  bool corrected = false;
  bool unnecessary = false;
  std::size_t edit_count = 0;
  std::string error;  // non-empty when the editor failed on this instance
};

struct EditReport {
  double corrected_rate = 0.0;         // % over gold-Misgendering instances
  double unnecessary_edit_rate = 0.0;  // same denominator
  std::size_t instances = 0;
  std::size_t total_edits = 0;
  std::vector<EditOutcome> outcomes;
};

using EditorFn =
    std::function<EditResult(const GenderProfile&, const ContentInstance&)>;
using DetectorFn =
    std::function<DetectionResult(const GenderProfile&, const std::string&)>;

// Runs the editor over Detect+Correct instances labeled Misgendering.
// corrected: the edited text re-detects as NoMisgendering. unnecessary: at
// least one edit lies outside the gold correction's diff spans (or outside
// the detector's evidence spans when no gold correction exists). Editor
// failures count as not corrected.
EditReport evaluate_editor(const std::vector<ContentInstance>& instances,
                           const std::map<std::string, GenderProfile>& profiles,
                           const EditorFn& editor, const DetectorFn& detector);

// Round-half-even to one decimal, matching the reported tables.
double round_half_even_1dp(double value);
std::string format_percent(double value);

enum class ReportFormat { kStructured, kHumanReadable };

std::string render_report(const MetricsReport& report, ReportFormat format);
std::string render_report(const EditReport& report, ReportFormat format);

}  // namespace misgender

#endif  // MISGENDER_EVAL_HPP_
