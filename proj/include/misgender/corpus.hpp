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
// Dataset schema, loaders, handle anonymization and the deterministic
// challenge-sentence generator.

#ifndef MISGENDER_CORPUS_HPP_
#define MISGENDER_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "misgender/core.hpp"
#include "misgender/engine.hpp"
#include "misgender/profiles.hpp"

namespace misgender {

struct ContentInstance {
  std::string id;
  Domain domain = Domain::kXPost;
  std::string text;
  std::string subject_id;
  std::optional<std::string> context;
  std::optional<Label> gold_label;
  std::optional<std::string> gold_correction;
  std::optional<std::string> label_provenance;  // "paper" or "convention"

  bool editable_domain() const { return domain == Domain::kLlmGeneration; }

  friend bool operator==(const ContentInstance&, const ContentInstance&) = default;
};

struct DatasetManifest {
  struct DomainCounts {
    std::size_t total = 0;
    std::size_t misgendering = 0;
    std::size_t no_misgendering = 0;
  };
  std::map<Domain, DomainCounts> per_domain;
  std::size_t total = 0;
  std::size_t discarded_irrelevant = 0;
};

DatasetManifest manifest_of(const std::vector<ContentInstance>& instances);

// One JSON record per line with the ContentInstance field names. Records
// whose gold_label is "Irrelevant" are discarded (counted in the
// manifest). Malformed records raise ParseError with the line number; an
// unknown subject_id raises ReferenceError when `known_subjects` is given.
std::pair<std::vector<ContentInstance>, DatasetManifest> load_dataset(
    std::istream& in, const std::set<std::string>* known_subjects = nullptr);

std::pair<std::vector<ContentInstance>, DatasetManifest> load_dataset_file(
    const std::string& path, const std::set<std::string>* known_subjects = nullptr);

// Canonical serialization; load + save round-trips byte-stably.
void save_dataset(std::ostream& out, const std::vector<ContentInstance>& instances);

// Replaces every @handle not in `subject_handles` (compared
// case-insensitively, no leading @) with the literal "[USERNAME]".
// Idempotent.
std::string normalize_handles(const std::string& text,
                              const std::set<std::string>& subject_handles);

// Importer for the released corpus format (CSV with header
// domain,name,text,label,correction,context). Maps domain aliases
// (twitter/x, youtube, llm) and the "No Misgendering"/"Irrelevant" label
// spellings onto the canonical schema; subject ids are slugified names
// which must resolve against `profiles`.
std::vector<ContentInstance> import_released(
    std::istream& in, const std::vector<GenderProfile>& profiles);

struct ChallengeOptions {
  std::uint64_t seed = 0;
  // Instances emitted per (profile, phenomenon) pair.
  std::size_t variants_per_phenomenon = 1;
};

// Deterministic, seeded template instances covering the challenge
// phenomena (temporal, question answered yes/no, agree, disagree, typo),
// each built around an inappropriate gendered term for the subject.
// Profiles with no inappropriate term are skipped with a warning.
std::vector<ContentInstance> generate_challenges(
    const EngineContext& ctx, const std::vector<GenderProfile>& profiles,
    const ChallengeOptions& options, std::vector<std::string>* warnings = nullptr);

extern const char* const kChallengePhenomena[6];

}  // namespace misgender

#endif  // MISGENDER_CORPUS_HPP_
