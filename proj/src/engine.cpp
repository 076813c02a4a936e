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

#include "misgender/engine.hpp"

namespace misgender {

EngineContext EngineContext::load(const std::filesystem::path& data_dir) {
  EngineContext ctx;
  ctx.pronouns = PronounTable::load_file((data_dir / "pronouns.csv").string());
  ctx.terms = GenderedTermTable::load_file(
      (data_dir / "gendered_terms.csv").string(), ctx.pronouns);
  ctx.morph = MorphTables::load(data_dir);
  return ctx;
}

std::vector<PronounRef> EngineContext::pronoun_candidates(
    const std::string& folded) const {
  std::vector<PronounRef> refs = pronouns.lookup(folded);
  if (!refs.empty()) return refs;
  if (const auto* entry = contraction(folded)) {
    return pronouns.lookup(entry->pronoun);
  }
  return {};
}

const MorphTables::Contraction* EngineContext::contraction(
    const std::string& folded) const {
  auto it = morph.contractions.find(folded);
  return it == morph.contractions.end() ? nullptr : &it->second;
}

}  // namespace misgender
