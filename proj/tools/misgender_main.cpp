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

#include <iostream>

#include <CLI11.hpp>

#include "misgender/cli.hpp"
#include "misgender/core.hpp"

namespace {

void add_common_flags(CLI::App* cmd, misgender::RunConfig* config) {
  cmd->add_option("--data,--lexicon", config->data_dir,
                  "Data directory with lexicon and morphology tables");
  cmd->add_option("--profiles", config->profiles_path,
                  "Profiles file (default: <data>/profiles.jsonl)");
  cmd->add_option("--out", config->out_path, "Output file");
  cmd->add_option("--workers", config->workers, "Worker thread count");
  cmd->add_option("--seed", config->seed, "Deterministic seed");
  cmd->add_option("--format", config->format, "Report format: structured|human");
}

void add_mode_flags(CLI::App* cmd, misgender::RunConfig* config) {
  cmd->add_option("--mode", config->mode,
                  "Detector: naive|coref|threshold|llm");
  cmd->add_option("--coref", config->coref, "Resolver: heuristic|external");
  cmd->add_option("--adapter-command", config->adapter_command,
                  "External resolver subprocess command");
  cmd->add_option("--adapter-host", config->adapter_host,
                  "External resolver host");
  cmd->add_option("--adapter-port", config->adapter_port,
                  "External resolver port");
  cmd->add_option("--scores", config->scores_path,
                  "Scores file for threshold mode");
  cmd->add_option("--score-field", config->score_field,
                  "Score column: toxicity|identity");
  cmd->add_option("--threshold", config->threshold,
                  "Classification threshold (default 0.75)");
  cmd->add_option("--replay", config->replay_path,
                  "Replay fixture for llm mode (no network)");
  cmd->add_option("--backend", config->backend_config,
                  "Backend config file for llm mode");
  cmd->add_flag("--unparseable-as-misgendering",
                config->unparseable_as_misgendering,
                "Score unparseable LLM output as Misgendering");
  cmd->add_flag("--include-identity", config->include_identity,
                "Include gender identity in detect prompts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Profile-aware misgendering detection and correction over text "
      "corpora"};
  app.require_subcommand(1);

  misgender::RunConfig config;

  CLI::App* detect = app.add_subcommand("detect", "Detect misgendering");
  detect->add_option("input", config.input_path, "Dataset file (JSONL)")
      ->required();
  add_common_flags(detect, &config);
  add_mode_flags(detect, &config);

  CLI::App* correct =
      app.add_subcommand("correct", "Detect, then rewrite Misgendering "
                                    "instances (Detect+Correct domains only)");
  correct->add_option("input", config.input_path, "Dataset file (JSONL)")
      ->required();
  add_common_flags(correct, &config);
  add_mode_flags(correct, &config);
  correct->add_flag("--gated", config.gated, "Coreference-gated editing");
  correct->add_option("--diff-out", config.diff_out_path,
                      "Standalone diff records file");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a detector (and optionally the "
                                     "editor) against gold labels");
  evaluate->add_option("input", config.input_path, "Dataset file (JSONL)")
      ->required();
  add_common_flags(evaluate, &config);
  add_mode_flags(evaluate, &config);
  evaluate->add_flag("--edit", config.edit, "Also evaluate the rule editor");
  evaluate->add_flag("--gated", config.gated, "Coreference-gated editing");
  evaluate->add_option("--thresholds", config.thresholds,
                       "Acceptance gates: domain:metric:min[:max],...");

  CLI::App* generate = app.add_subcommand(
      "generate", "Emit the deterministic challenge corpus");
  add_common_flags(generate, &config);
  generate->add_option("--variants", config.variants,
                       "Instances per profile and phenomenon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(detect)) {
      return misgender::cmd_detect(config, std::cout, std::cerr);
    }
    if (app.got_subcommand(correct)) {
      return misgender::cmd_correct(config, std::cout, std::cerr);
    }
    if (app.got_subcommand(evaluate)) {
      return misgender::cmd_evaluate(config, std::cout, std::cerr);
    }
    if (app.got_subcommand(generate)) {
      return misgender::cmd_generate(config, std::cout, std::cerr);
    }
  } catch (const misgender::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
