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
// Batch commands behind the misgender binary. Each command is a plain
// function over a RunConfig so the integration tests can drive it without
// spawning processes. Exit codes: 0 success, 1 operational error, 2
// acceptance thresholds unmet.

#ifndef MISGENDER_CLI_HPP_
#define MISGENDER_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

namespace misgender {

struct RunConfig {
  std::string data_dir;       // lexicon, morphology, few-shot banks
  std::string profiles_path;  // defaults to <data_dir>/profiles.jsonl
  std::string input_path;
  std::string out_path;
  std::string diff_out_path;  // cmd_correct: standalone diff records

  std::string mode = "naive";       // naive | coref | threshold | llm
  std::string coref = "heuristic";  // heuristic | external
  std::string adapter_command;      // external resolver subprocess
  std::string adapter_host;
  int adapter_port = 0;

  bool gated = false;  // coreference-gated editing
  bool edit = false;   // cmd_evaluate: also evaluate the editor

  std::string scores_path;              // threshold mode input
  std::string score_field = "toxicity";  // toxicity | identity
  double threshold = 0.75;

  std::string replay_path;     // llm mode replay fixture
  std::string backend_config;  // llm mode live backend config file
  bool unparseable_as_misgendering = false;
  bool include_identity = false;

  std::uint64_t seed = 0;
  std::size_t variants = 1;
  std::size_t workers = 1;
  std::string format = "structured";  // structured | human
  std::string thresholds;  // "domain:metric:min[:max]," acceptance gates
};

int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_correct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes content to path via a temp file + rename so partial runs never
// leave a truncated result behind.
void atomic_write_file(const std::string& path, const std::string& content);

// Resolves the bundled data directory: explicit value, else the
// MISGENDER_DATA_DIR environment variable, else the build-time default.
std::string resolve_data_dir(const std::string& explicit_dir);

}  // namespace misgender

#endif  // MISGENDER_CLI_HPP_
