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

#ifndef MISGENDER_TESTS_SUPPORT_HPP_
#define MISGENDER_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "misgender/engine.hpp"
#include "misgender/profiles.hpp"

namespace misgender::test {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(MISGENDER_TEST_DATA_DIR);
}

inline const EngineContext& engine() {
  static const EngineContext ctx = EngineContext::load(data_dir());
  return ctx;
}

inline const std::vector<GenderProfile>& profiles() {
  static const std::vector<GenderProfile> all =
      load_profiles_file((data_dir() / "profiles.jsonl").string());
  return all;
}

inline const GenderProfile& profile(const std::string& id) {
  for (const GenderProfile& p : profiles()) {
    if (p.id == id) return p;
  }
  throw std::runtime_error("test profile not found: " + id);
}

inline std::map<std::string, GenderProfile> profiles_by_id() {
  std::map<std::string, GenderProfile> out;
  for (const GenderProfile& p : profiles()) out.emplace(p.id, p);
  return out;
}

}  // namespace misgender::test

#endif  // MISGENDER_TESTS_SUPPORT_HPP_
