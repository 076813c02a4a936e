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

#include "misgender/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "misgender/baselines.hpp"
#include "misgender/corpus.hpp"
#include "misgender/detect.hpp"
#include "misgender/edit.hpp"
#include "misgender/eval.hpp"

#ifndef MISGENDER_DEFAULT_DATA_DIR
#define MISGENDER_DEFAULT_DATA_DIR ""
#endif

namespace misgender {

namespace {

using nlohmann::ordered_json;

struct Scores {
  double toxicity = 0.0;
  double identity = 0.0;
};

std::map<std::string, Scores> load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scores file: " + path);
  std::map<std::string, Scores> scores;
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ParseError("scores file line " + std::to_string(line_no) +
                       ": expected instance_id,toxicity,identity");
    }
    try {
      scores[line.substr(0, c1)] = {std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                                    std::stod(line.substr(c2 + 1))};
    } catch (const std::exception&) {
      throw ParseError("scores file line " + std::to_string(line_no) +
                       ": non-numeric score");
    }
  }
  return scores;
}

// Runs fn(0..count) on a bounded pool; results ordering is the caller's
// responsibility (index-addressed output buffers).
void run_parallel(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min(workers, count);
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&next, count, &fn] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (std::thread& thread : pool) thread.join();
}

struct LoadedRun {
  EngineContext ctx;
  std::vector<GenderProfile> profiles;
  std::map<std::string, GenderProfile> by_id;
  std::vector<ContentInstance> instances;
  DatasetManifest manifest;
};

LoadedRun load_run(const RunConfig& config, bool with_dataset) {
  LoadedRun run;
  const std::string data_dir = resolve_data_dir(config.data_dir);
  run.ctx = EngineContext::load(data_dir);
  const std::string profiles_path =
      config.profiles_path.empty()
          ? (std::filesystem::path(data_dir) / "profiles.jsonl").string()
          : config.profiles_path;
  run.profiles = load_profiles_file(profiles_path);
  for (const GenderProfile& profile : run.profiles) {
    run.by_id.emplace(profile.id, profile);
  }
  if (with_dataset) {
    if (config.input_path.empty()) {
      throw ConfigError("an input dataset is required");
    }
    std::tie(run.instances, run.manifest) =
        load_dataset_file(config.input_path);
  }
  return run;
}

DetectMode parse_mode(const std::string& mode) {
  if (mode == "naive") return DetectMode::kNaive;
  if (mode == "coref") return DetectMode::kCoref;
  if (mode == "threshold") return DetectMode::kThreshold;
  if (mode == "llm") return DetectMode::kLlm;
  throw ConfigError("unknown mode: " + mode);
}

ClusterProviderFn make_cluster_provider(const EngineContext& ctx,
                                        const RunConfig& config,
                                        const GenderProfile& profile) {
  if (config.coref == "heuristic") {
    return [&ctx, &profile](const std::string& text) {
      return resolve_heuristic(ctx, text, tokenize(text), profile);
    };
  }
  if (config.coref == "external") {
    AdapterConfig adapter;
    adapter.command = config.adapter_command;
    adapter.host = config.adapter_host;
    adapter.port = config.adapter_port;
    if (adapter.command.empty() && adapter.host.empty()) {
      throw ConfigError("external coref requires an adapter command or host");
    }
    return [adapter](const std::string& text) {
      return resolve_external(text, adapter);
    };
  }
  throw ConfigError("unknown coref resolver: " + config.coref);
}

ordered_json evidence_json(const Evidence& evidence) {
  ordered_json json;
  json["begin"] = evidence.span.begin;
  json["end"] = evidence.span.end;
  json["surface"] = evidence.surface;
  json["kind"] = std::string(to_string(evidence.kind));
  json["detail"] = evidence.detail;
  return json;
}

ordered_json edit_json(const Edit& edit) {
  ordered_json json;
  json["begin"] = edit.span.begin;
  json["end"] = edit.span.end;
  json["original"] = edit.original;
  json["replacement"] = edit.replacement;
  json["reason"] = std::string(to_string(edit.reason));
  return json;
}

struct ThresholdGate {
  std::string domain;  // domain string or "overall"
  std::string metric;
  double min = 0.0;
  double max = 100.0;
};

std::vector<ThresholdGate> parse_thresholds(const std::string& raw) {
  std::vector<ThresholdGate> gates;
  std::stringstream ss(raw);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    std::vector<std::string> pieces;
    std::stringstream ps(part);
    std::string piece;
    while (std::getline(ps, piece, ':')) pieces.push_back(piece);
    if (pieces.size() < 3 || pieces.size() > 4) {
      throw ConfigError("threshold gate must be domain:metric:min[:max]: " + part);
    }
    ThresholdGate gate;
    gate.domain = pieces[0];
    gate.metric = pieces[1];
    try {
      gate.min = std::stod(pieces[2]);
      if (pieces.size() == 4) gate.max = std::stod(pieces[3]);
    } catch (const std::exception&) {
      throw ConfigError("non-numeric threshold bound in: " + part);
    }
    gates.push_back(std::move(gate));
  }
  return gates;
}

double metric_value(const DomainMetrics& metrics, const std::string& name) {
  if (name == "accuracy") return metrics.accuracy;
  if (name == "precision") return metrics.precision;
  if (name == "recall") return metrics.recall;
  if (name == "f1") return metrics.f1;
  throw ConfigError("unknown metric: " + name);
}

// Per-instance detection shared by cmd_detect and cmd_evaluate.
struct InstanceOutcome {
  std::optional<DetectionResult> result;
  std::string error;
  std::string note;
};

InstanceOutcome detect_instance(
    const LoadedRun& run, const RunConfig& config, DetectMode mode,
    const ContentInstance& instance,
    const std::map<std::string, Scores>* scores,
    const FewShotBanks* banks, const CompletionBackend* backend) {
  InstanceOutcome outcome;
  auto profile_it = run.by_id.find(instance.subject_id);
  if (profile_it == run.by_id.end()) {
    outcome.error = "no profile for subject '" + instance.subject_id + "'";
    return outcome;
  }
  const GenderProfile& profile = profile_it->second;
  const std::string context = instance.context.value_or("");

  switch (mode) {
    case DetectMode::kNaive:
      outcome.result = detect_with_context(run.ctx, profile, instance.text,
                                           context, DetectMode::kNaive);
      break;
    case DetectMode::kCoref: {
      const ClusterProviderFn provider =
          make_cluster_provider(run.ctx, config, profile);
      outcome.result = detect_with_context(
          run.ctx, profile, instance.text, context, DetectMode::kCoref, provider);
      break;
    }
    case DetectMode::kThreshold: {
      auto it = scores->find(instance.id);
      if (it == scores->end()) {
        outcome.error = "no score for instance '" + instance.id + "'";
        return outcome;
      }
      const double value = config.score_field == "identity"
                               ? it->second.identity
                               : it->second.toxicity;
      outcome.result = detect_threshold(value, config.threshold);
      break;
    }
    case DetectMode::kLlm: {
      const PromptBundle prompt =
          build_detect_prompt(*banks, profile, instance.text, instance.domain,
                              config.include_identity);
      std::string response;
      try {
        response = backend->complete(prompt.assembled);
      } catch (const BackendError& e) {
        outcome.error = e.what();
        return outcome;
      }
      const std::optional<Label> label = parse_detect_response(response);
      DetectionResult result;
      result.mode = DetectMode::kLlm;
      if (label) {
        result.label = *label;
      } else {
        result.label = config.unparseable_as_misgendering
                           ? Label::kMisgendering
                           : Label::kNoMisgendering;
        outcome.note = "unparseable response; defaulted";
      }
      outcome.result = result;
      break;
    }
  }
  return outcome;
}

}  // namespace

std::string resolve_data_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("MISGENDER_DATA_DIR");
      env != nullptr && env[0] != '\0') {
    return env;
  }
  const std::string built_in = MISGENDER_DEFAULT_DATA_DIR;
  if (!built_in.empty()) return built_in;
  throw ConfigError(
      "no data directory: pass --data, set MISGENDER_DATA_DIR, or build with "
      "a default");
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp);
    out << content;
    if (!out.good()) throw ConfigError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedRun run = load_run(config, /*with_dataset=*/true);
  const DetectMode mode = parse_mode(config.mode);

  std::optional<std::map<std::string, Scores>> scores;
  if (mode == DetectMode::kThreshold) {
    if (config.scores_path.empty()) {
      throw ConfigError("threshold mode requires --scores");
    }
    scores = load_scores(config.scores_path);
  }
  std::optional<FewShotBanks> banks;
  std::optional<CompletionBackend> backend;
  if (mode == DetectMode::kLlm) {
    banks = FewShotBanks::load(
        std::filesystem::path(resolve_data_dir(config.data_dir)) / "fewshot");
    BackendConfig backend_config;
    if (!config.backend_config.empty()) {
      backend_config = BackendConfig::load_file(config.backend_config);
    }
    if (!config.replay_path.empty()) {
      backend_config.replay_path = config.replay_path;
      backend_config.replay_only = true;
    }
    if (backend_config.replay_path.empty() && backend_config.endpoint.empty()) {
      throw ConfigError("llm mode requires --replay or a backend config");
    }
    backend.emplace(backend_config);
  }

  std::vector<InstanceOutcome> outcomes(run.instances.size());
  run_parallel(run.instances.size(), config.workers, [&](std::size_t i) {
    outcomes[i] = detect_instance(run, config, mode, run.instances[i],
                                  scores ? &*scores : nullptr,
                                  banks ? &*banks : nullptr,
                                  backend ? &*backend : nullptr);
  });

  std::size_t flagged = 0, errors = 0;
  std::string body;
  for (std::size_t i = 0; i < run.instances.size(); ++i) {
    ordered_json record;
    record["id"] = run.instances[i].id;
    if (!outcomes[i].error.empty()) {
      record["error"] = outcomes[i].error;
      ++errors;
    } else {
      const DetectionResult& result = *outcomes[i].result;
      record["label"] = std::string(to_string(result.label));
      record["mode"] = std::string(to_string(result.mode));
      ordered_json evidence = ordered_json::array();
      for (const Evidence& item : result.evidence) {
        evidence.push_back(evidence_json(item));
      }
      record["evidence"] = std::move(evidence);
      if (!outcomes[i].note.empty()) record["note"] = outcomes[i].note;
      if (result.label == Label::kMisgendering) ++flagged;
    }
    body += record.dump();
    body += '\n';
  }
  if (!config.out_path.empty()) atomic_write_file(config.out_path, body);

  out << "detect: " << run.instances.size() << " instances, " << flagged
      << " flagged, " << errors << " errors\n";
  if (errors > 0) err << "detect: " << errors << " per-instance errors\n";
  return 0;
}

int cmd_correct(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedRun run = load_run(config, /*with_dataset=*/true);
  if (config.mode != "naive" && config.mode != "coref") {
    throw ConfigError("correct supports rule modes only (naive, coref)");
  }
  const DetectMode mode = parse_mode(config.mode);

  for (const ContentInstance& instance : run.instances) {
    if (!instance.editable_domain()) {
      err << "refusing to edit Detect-Only content: instance '" << instance.id
          << "' is in domain " << to_string(instance.domain) << "\n";
      return 1;
    }
  }

  struct Row {
    ordered_json record;
    ordered_json diffs = ordered_json::array();
    bool edited = false;
    std::string error;
  };
  std::vector<Row> rows(run.instances.size());

  run_parallel(run.instances.size(), config.workers, [&](std::size_t i) {
    const ContentInstance& instance = run.instances[i];
    Row& row = rows[i];
    row.record["id"] = instance.id;
    auto profile_it = run.by_id.find(instance.subject_id);
    if (profile_it == run.by_id.end()) {
      row.error = "no profile for subject '" + instance.subject_id + "'";
      return;
    }
    const GenderProfile& profile = profile_it->second;
    try {
      const InstanceOutcome detection =
          detect_instance(run, config, mode, instance, nullptr, nullptr, nullptr);
      if (!detection.error.empty()) {
        row.error = detection.error;
        return;
      }
      const Label label = detection.result->label;
      row.record["detect_label"] = std::string(to_string(label));
      if (label == Label::kNoMisgendering) {
        row.record["edited_text"] = instance.text;  // pipeline gate: untouched
        row.record["edits"] = ordered_json::array();
        return;
      }
      EditResult result;
      if (config.gated) {
        const ClusterProviderFn provider =
            make_cluster_provider(run.ctx, config, profile);
        const CorefClusters clusters = provider(instance.text);
        result = correct(run.ctx, profile, instance.text, &clusters);
      } else {
        result = correct(run.ctx, profile, instance.text);
      }
      row.edited = !result.edits.empty();
      row.record["edited_text"] = result.edited_text;
      ordered_json edits = ordered_json::array();
      for (const Edit& edit : result.edits) {
        ordered_json one = edit_json(edit);
        edits.push_back(one);
        one["id"] = instance.id;
        row.diffs.push_back(std::move(one));
      }
      row.record["edits"] = std::move(edits);
      if (!result.diagnostics.empty()) {
        row.record["diagnostics"] = result.diagnostics;
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
  });

  std::size_t edited = 0, errors = 0;
  std::string body;
  std::string diff_body;
  for (Row& row : rows) {
    if (!row.error.empty()) {
      row.record["error"] = row.error;
      ++errors;
    }
    if (row.edited) ++edited;
    body += row.record.dump();
    body += '\n';
    for (const auto& diff : row.diffs) {
      diff_body += diff.dump();
      diff_body += '\n';
    }
  }
  if (!config.out_path.empty()) atomic_write_file(config.out_path, body);
  if (!config.diff_out_path.empty()) {
    atomic_write_file(config.diff_out_path, diff_body);
  }
  out << "correct: " << run.instances.size() << " instances, " << edited
      << " edited, " << errors << " errors\n";
  return errors == run.instances.size() && !run.instances.empty() ? 1 : 0;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedRun run = load_run(config, /*with_dataset=*/true);
  const DetectMode mode = parse_mode(config.mode);
  for (const ContentInstance& instance : run.instances) {
    if (!instance.gold_label) {
      throw ConfigError("evaluate requires gold labels; instance '" +
                        instance.id + "' has none");
    }
  }
  std::optional<std::map<std::string, Scores>> scores;
  if (mode == DetectMode::kThreshold) {
    if (config.scores_path.empty()) {
      throw ConfigError("threshold mode requires --scores");
    }
    scores = load_scores(config.scores_path);
  }
  std::optional<FewShotBanks> banks;
  std::optional<CompletionBackend> backend;
  if (mode == DetectMode::kLlm) {
    banks = FewShotBanks::load(
        std::filesystem::path(resolve_data_dir(config.data_dir)) / "fewshot");
    BackendConfig backend_config;
    if (!config.backend_config.empty()) {
      backend_config = BackendConfig::load_file(config.backend_config);
    }
    if (!config.replay_path.empty()) {
      backend_config.replay_path = config.replay_path;
      backend_config.replay_only = true;
    }
    if (backend_config.replay_path.empty() && backend_config.endpoint.empty()) {
      throw ConfigError("llm mode requires --replay or a backend config");
    }
    backend.emplace(backend_config);
  }

  std::vector<InstanceOutcome> outcomes(run.instances.size());
  run_parallel(run.instances.size(), config.workers, [&](std::size_t i) {
    outcomes[i] = detect_instance(run, config, mode, run.instances[i],
                                  scores ? &*scores : nullptr,
                                  banks ? &*banks : nullptr,
                                  backend ? &*backend : nullptr);
  });

  std::vector<LabeledPair> pairs;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < run.instances.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      ++skipped;
      err << "evaluate: skipping '" << run.instances[i].id
          << "': " << outcomes[i].error << "\n";
      continue;
    }
    pairs.emplace_back(*run.instances[i].gold_label, outcomes[i].result->label,
                       run.instances[i].domain);
  }
  const MetricsReport report = compute_metrics(pairs);
  const ReportFormat format = config.format == "human"
                                  ? ReportFormat::kHumanReadable
                                  : ReportFormat::kStructured;
  std::string rendered = render_report(report, format);
  std::optional<EditReport> edit_report;

  if (config.edit) {
    const DetectorFn detector = [&](const GenderProfile& profile,
                                    const std::string& text) {
      return mode == DetectMode::kCoref
                 ? detect_with_context(run.ctx, profile, text, "",
                                       DetectMode::kCoref)
                 : detect_naive(run.ctx, profile, text);
    };
    const EditorFn editor = [&](const GenderProfile& profile,
                                const ContentInstance& instance) {
      if (config.gated) {
        const CorefClusters clusters = resolve_heuristic(
            run.ctx, instance.text, tokenize(instance.text), profile);
        return correct(run.ctx, profile, instance.text, &clusters);
      }
      return correct(run.ctx, profile, instance.text);
    };
    edit_report = evaluate_editor(run.instances, run.by_id, editor, detector);
    if (format == ReportFormat::kHumanReadable) {
      rendered += render_report(*edit_report, format);
    } else {
      // One well-formed JSON document with both halves.
      ordered_json combined;
      combined["detect"] = ordered_json::parse(rendered);
      combined["edit"] =
          ordered_json::parse(render_report(*edit_report, format));
      rendered = combined.dump(2) + "\n";
    }
  }

  if (!config.out_path.empty()) {
    atomic_write_file(config.out_path, rendered);
  }
  out << rendered;
  if (skipped > 0) out << "evaluate: skipped " << skipped << " instances\n";

  if (!config.thresholds.empty()) {
    bool ok = true;
    for (const ThresholdGate& gate : parse_thresholds(config.thresholds)) {
      const DomainMetrics* metrics = nullptr;
      if (gate.domain == "overall") {
        metrics = &report.overall;
      } else {
        auto it = report.per_domain.find(domain_from_string(gate.domain));
        if (it == report.per_domain.end()) {
          err << "threshold gate: no instances in domain " << gate.domain << "\n";
          ok = false;
          continue;
        }
        metrics = &it->second;
      }
      const double value = metric_value(*metrics, gate.metric);
      if (value < gate.min || value > gate.max) {
        err << "threshold gate failed: " << gate.domain << " " << gate.metric
            << " = " << format_percent(value) << " outside [" << gate.min
            << ", " << gate.max << "]\n";
        ok = false;
      }
    }
    if (!ok) return 2;
  }
  return 0;
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedRun run = load_run(config, /*with_dataset=*/false);
  ChallengeOptions options;
  options.seed = config.seed;
  options.variants_per_phenomenon = std::max<std::size_t>(1, config.variants);
  std::vector<std::string> warnings;
  const std::vector<ContentInstance> instances =
      generate_challenges(run.ctx, run.profiles, options, &warnings);
  for (const std::string& warning : warnings) {
    err << "generate: " << warning << "\n";
  }
  std::ostringstream body;
  save_dataset(body, instances);
  if (!config.out_path.empty()) atomic_write_file(config.out_path, body.str());

  const DatasetManifest manifest = manifest_of(instances);
  ordered_json manifest_json;
  for (const auto& [domain, counts] : manifest.per_domain) {
    manifest_json[std::string(to_string(domain))] = counts.total;
  }
  manifest_json["total"] = manifest.total;
  out << "generate: " << manifest.total << " instances over "
      << run.profiles.size() << " profiles (seed " << config.seed << ")\n";
  out << "manifest: " << manifest_json.dump() << "\n";
  return 0;
}

}  // namespace misgender
