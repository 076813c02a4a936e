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

#include "misgender/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace misgender {

namespace {

DomainMetrics finalize(ConfusionCounts counts) {
  DomainMetrics metrics;
  metrics.counts = counts;
  const double total = static_cast<double>(counts.total());
  if (total > 0) {
    metrics.accuracy = 100.0 * static_cast<double>(counts.tp + counts.tn) / total;
  }
  if (counts.tp + counts.fp > 0) {
    metrics.precision =
        100.0 * static_cast<double>(counts.tp) /
        static_cast<double>(counts.tp + counts.fp);
  } else {
    metrics.precision_undefined = true;
  }
  if (counts.tp + counts.fn > 0) {
    metrics.recall = 100.0 * static_cast<double>(counts.tp) /
                     static_cast<double>(counts.tp + counts.fn);
  } else {
    metrics.recall_undefined = true;
  }
  if (metrics.precision + metrics.recall > 0) {
    metrics.f1 = 2.0 * metrics.precision * metrics.recall /
                 (metrics.precision + metrics.recall);
  }
  return metrics;
}

const char* domain_heading(Domain domain) {
  switch (domain) {
    case Domain::kXPost:
      return "X Posts";
    case Domain::kYouTubeComment:
      return "YouTube Comments";
    case Domain::kLlmGeneration:
      return "LLM Generations";
  }
  return "";
}

void append_metric_rows(std::ostringstream& out, const DomainMetrics& metrics) {
  const auto row = [&out](const char* label, double value, bool undefined) {
    out << "  " << label << format_percent(value);
    if (undefined) out << " (undefined: zero denominator)";
    out << '\n';
  };
  row("Accuracy   ", metrics.accuracy, false);
  row("Precision  ", metrics.precision, metrics.precision_undefined);
  row("Recall     ", metrics.recall, metrics.recall_undefined);
  row("F1         ", metrics.f1, false);
  out << "  (tp=" << metrics.counts.tp << " fp=" << metrics.counts.fp
      << " tn=" << metrics.counts.tn << " fn=" << metrics.counts.fn << ")\n";
}

nlohmann::ordered_json metrics_json(const DomainMetrics& metrics) {
  nlohmann::ordered_json json;
  json["accuracy"] = format_percent(metrics.accuracy);
  json["precision"] = format_percent(metrics.precision);
  json["recall"] = format_percent(metrics.recall);
  json["f1"] = format_percent(metrics.f1);
  if (metrics.precision_undefined) json["precision_undefined"] = true;
  if (metrics.recall_undefined) json["recall_undefined"] = true;
  json["tp"] = metrics.counts.tp;
  json["fp"] = metrics.counts.fp;
  json["tn"] = metrics.counts.tn;
  json["fn"] = metrics.counts.fn;
  return json;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<LabeledPair>& pairs) {
  std::map<Domain, ConfusionCounts> per_domain;
  ConfusionCounts overall;
  for (const auto& [gold, predicted, domain] : pairs) {
    ConfusionCounts& counts = per_domain[domain];
    if (gold == Label::kMisgendering && predicted == Label::kMisgendering) {
      ++counts.tp;
      ++overall.tp;
    } else if (gold == Label::kNoMisgendering &&
               predicted == Label::kMisgendering) {
      ++counts.fp;
      ++overall.fp;
    } else if (gold == Label::kNoMisgendering &&
               predicted == Label::kNoMisgendering) {
      ++counts.tn;
      ++overall.tn;
    } else {
      ++counts.fn;
      ++overall.fn;
    }
  }
  MetricsReport report;
  for (const auto& [domain, counts] : per_domain) {
    report.per_domain[domain] = finalize(counts);
  }
  report.overall = finalize(overall);
  return report;
}

std::vector<Span> diff_spans(std::string_view original,
                             std::string_view corrected) {
  const std::vector<Token> a = tokenize(original);
  const std::vector<Token> b = tokenize(corrected);
  const std::size_t n = a.size(), m = b.size();

  // Token-level LCS on exact surfaces.
  std::vector<std::vector<std::size_t>> lcs(n + 1,
                                            std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i].surface == b[j].surface
                      ? lcs[i + 1][j + 1] + 1
                      : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<bool> kept(n, false);
  for (std::size_t i = 0, j = 0; i < n && j < m;) {
    if (a[i].surface == b[j].surface) {
      kept[i] = true;
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  std::vector<Span> spans;
  for (std::size_t i = 0; i < n;) {
    if (kept[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !kept[j]) ++j;
    spans.push_back({a[i].span.begin, a[j - 1].span.end});
    i = j;
  }
  return spans;
}

EditReport evaluate_editor(const std::vector<ContentInstance>& instances,
                           const std::map<std::string, GenderProfile>& profiles,
                           const EditorFn& editor, const DetectorFn& detector) {
  EditReport report;
  std::size_t corrected_count = 0;
  std::size_t unnecessary_count = 0;
  for (const ContentInstance& instance : instances) {
    if (!instance.editable_domain() ||
        instance.gold_label != Label::kMisgendering) {
      continue;
    }
    ++report.instances;
    EditOutcome outcome;
    outcome.id = instance.id;
    auto profile_it = profiles.find(instance.subject_id);
    if (profile_it == profiles.end()) {
      outcome.error = "no profile for subject " + instance.subject_id;
      report.outcomes.push_back(std::move(outcome));
      continue;
    }
    const GenderProfile& profile = profile_it->second;
    EditResult result;
    try {
      result = editor(profile, instance);
    } catch (const Error& e) {
      outcome.error = e.what();
      report.outcomes.push_back(std::move(outcome));
      continue;
    }
    outcome.edit_count = result.edits.size();
    report.total_edits += result.edits.size();
    outcome.corrected =
        detector(profile, result.edited_text).label == Label::kNoMisgendering;

    std::vector<Span> reference;
    if (instance.gold_correction) {
      reference = diff_spans(instance.text, *instance.gold_correction);
    } else {
      for (const Evidence& evidence : detector(profile, instance.text).evidence) {
        reference.push_back(evidence.span);
      }
    }
    for (const Edit& edit : result.edits) {
      const bool touches_reference =
          std::any_of(reference.begin(), reference.end(),
                      [&edit](Span span) { return span.overlaps(edit.span); });
      if (!touches_reference) {
        outcome.unnecessary = true;
        break;
      }
    }
    if (outcome.corrected) ++corrected_count;
    if (outcome.unnecessary) ++unnecessary_count;
    report.outcomes.push_back(std::move(outcome));
  }
  if (report.instances > 0) {
    report.corrected_rate = 100.0 * static_cast<double>(corrected_count) /
                            static_cast<double>(report.instances);
    report.unnecessary_edit_rate =
        100.0 * static_cast<double>(unnecessary_count) /
        static_cast<double>(report.instances);
  }
  return report;
}

double round_half_even_1dp(double value) {
  const double scaled = value * 10.0;
  const double floor_value = std::floor(scaled);
  const double frac = scaled - floor_value;
  double rounded;
  if (std::abs(frac - 0.5) < 1e-9) {
    rounded = (std::fmod(floor_value, 2.0) == 0.0) ? floor_value
                                                   : floor_value + 1.0;
  } else if (frac > 0.5) {
    rounded = floor_value + 1.0;
  } else {
    rounded = floor_value;
  }
  return rounded / 10.0;
}

std::string format_percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", round_half_even_1dp(value));
  return buffer;
}

std::string render_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::kStructured) {
    nlohmann::ordered_json json;
    nlohmann::ordered_json domains;
    for (const auto& [domain, metrics] : report.per_domain) {
      domains[std::string(to_string(domain))] = metrics_json(metrics);
    }
    json["domains"] = std::move(domains);
    json["overall"] = metrics_json(report.overall);
    return json.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& [domain, metrics] : report.per_domain) {
    out << domain_heading(domain) << '\n';
    append_metric_rows(out, metrics);
  }
  out << "Overall\n";
  append_metric_rows(out, report.overall);
  return out.str();
}

std::string render_report(const EditReport& report, ReportFormat format) {
  if (format == ReportFormat::kStructured) {
    nlohmann::ordered_json json;
    json["instances"] = report.instances;
    json["corrected_rate"] = format_percent(report.corrected_rate);
    json["unnecessary_edit_rate"] = format_percent(report.unnecessary_edit_rate);
    json["total_edits"] = report.total_edits;
    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (const EditOutcome& outcome : report.outcomes) {
      nlohmann::ordered_json row;
      row["id"] = outcome.id;
      row["corrected"] = outcome.corrected;
      row["unnecessary"] = outcome.unnecessary;
      row["edits"] = outcome.edit_count;
      if (!outcome.error.empty()) row["error"] = outcome.error;
      outcomes.push_back(std::move(row));
    }
    json["outcomes"] = std::move(outcomes);
    return json.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "Edit evaluation (" << report.instances << " instances)\n";
  out << "  Misgendering corrected  " << format_percent(report.corrected_rate)
      << '\n';
  out << "  Unnecessary edits       "
      << format_percent(report.unnecessary_edit_rate) << '\n';
  out << "  Total edits             " << report.total_edits << '\n';
  return out.str();
}

}  // namespace misgender
