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

#ifndef MISGENDER_ENGINE_HPP_
#define MISGENDER_ENGINE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "misgender/lexicon.hpp"
#include "misgender/textproc.hpp"

namespace misgender {

// Immutable bundle of the rule tables every detector/editor needs.
// Safe to share across worker threads.
struct EngineContext {
  PronounTable pronouns;
  GenderedTermTable terms;
  MorphTables morph;

  static EngineContext load(const std::filesystem::path& data_dir);

  // Pronoun slot candidates for a token, going through the contraction
  // table when the surface is a contracted pronoun ("shes" -> "she").
  std::vector<PronounRef> pronoun_candidates(const std::string& folded) const;

  // The contraction entry for a folded surface, if any.
  const MorphTables::Contraction* contraction(const std::string& folded) const;
};

}  // namespace misgender

#endif  // MISGENDER_ENGINE_HPP_
