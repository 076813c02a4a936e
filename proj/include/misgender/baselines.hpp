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
// Prompt construction and response parsing for the LLM detect/edit
// baselines, plus the pluggable completion backend with a deterministic
// replay mode. Prompt assembly is byte-stable for fixed inputs.

#ifndef MISGENDER_BASELINES_HPP_
#define MISGENDER_BASELINES_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/core.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

struct PromptBundle {
  std::string system_instructions;
  std::string few_shot_block;
  std::string instance_block;
  std::string assembled;  // exactly the three parts concatenated in order
};

// A bank of chain-of-thought examples for one gender category. The raw
// text is inserted verbatim; `examples` are the individual blocks, each
// ending in an "Answer: YES/NO Misgendering" line.
struct FewShotBank {
  std::string category;
  std::string text;
  std::vector<std::string> examples;
};

struct FewShotBanks {
  std::map<std::string, FewShotBank> by_category;

  // Expects <dir>/trans-woman.txt, trans-man.txt, non-binary.txt.
  static FewShotBanks load(const std::filesystem::path& dir);

  const FewShotBank& for_profile(const GenderProfile& profile) const;
};

// Gender category used for example selection: first recognizable entry of
// gender_identities, falling back to the term categories.
std::string fewshot_category(const GenderProfile& profile);

// Detection prompt: instruction template with the domain noun adjusted,
// the gender-matched example bank, then the instance block with
// Person/Pronouns/Gendered Terms/Deadname/text fields. The deadname line is
// omitted when the profile has none. `include_gender_identity` adds a
// Gender Identity line (the only place that field is ever read).
PromptBundle build_detect_prompt(const FewShotBanks& banks,
                                 const GenderProfile& profile,
                                 std::string_view text, Domain domain,
                                 bool include_gender_identity = false);

// The last case-insensitive occurrence of "YES Misgendering" /
// "NO Misgendering" decides; nullopt when neither phrase appears.
std::optional<Label> parse_detect_response(std::string_view response);

// Zero-shot edit prompt. The profile block never includes gender identity.
// `sentence` must be a single sentence (ContractViolation otherwise, using
// the caller-supplied sentence count).
PromptBundle build_edit_prompt(const GenderProfile& profile,
                               std::string_view sentence,
                               const std::optional<std::string>& context,
                               std::size_t sentence_count = 1);

// Stable 64-bit FNV-1a fingerprint, used as the replay fixture key.
std::string prompt_fingerprint(std::string_view prompt);

struct BackendConfig {
  std::string endpoint;  // e.g. http://host:port/v1/completions
  std::string model;
  double temperature = 0.0;
  int max_tokens = 512;
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  std::string api_key_env = "MISGENDER_API_KEY";

  std::string replay_path;   // fixture of fingerprint -> response records
  bool replay_only = false;  // never fall back to the network

  static BackendConfig load_file(const std::string& path);
};

class CompletionBackend {
 public:
  explicit CompletionBackend(BackendConfig config);

  // Replay mode returns the recorded response (BackendError on a fixture
  // miss); otherwise POSTs to the configured endpoint with bounded retries.
  std::string complete(const std::string& prompt) const;

 private:
  BackendConfig config_;
  std::map<std::string, std::string> replay_;
};

// Writes fingerprint -> response records in the replay fixture format.
void write_replay_fixture(std::ostream& out,
                          const std::map<std::string, std::string>& records);

}  // namespace misgender

#endif  // MISGENDER_BASELINES_HPP_
