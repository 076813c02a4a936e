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

#include "misgender/baselines.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "misgender/textproc.hpp"
#include "misgender/utf8.hpp"

namespace misgender {

namespace {

// Instruction template for the detection prompt. {noun} and {nouns} are
// replaced with the domain's content noun.
constexpr std::string_view kDetectInstructions =
    "Misgendering is the act of using incorrect gendered terms for an "
    "individual. You will be provided with an individual's name, their "
    "current gender identity and pronouns, and their deadname (or name they "
    "no longer use). You will also be provided with a {noun} about this "
    "individual.\n"
    "For each {noun} tag whether it contains misgendering towards the given "
    "individual (YES Misgendering), or does not contain misgendering towards "
    "them (NO Misgendering).\n"
    "\n"
    "The following counts as Misgendering:\n"
    "- Use of any pronouns to refer to an individual other than the ones "
    "listed for them.\n"
    "- A non-binary person referred to using binary gendered terms, i.e. "
    "feminine or masculine words, e.g. man, woman, Mr., Mrs. etc.\n"
    "- A trans-man referred to using feminine terms, e.g. woman, girl, Ms. "
    "etc.\n"
    "- A trans-woman referred to using masculine terms, e.g. man, boy, Mr. "
    "etc.\n"
    "\n"
    "Note,\n"
    "- If pronouns are used in a {noun}, pay close attention to who the "
    "pronoun refers to. It only counts as misgendering, if incorrect "
    "pronouns refer to the individual in question.\n"
    "- If incorrect gender terms are used referring to the individual's past "
    "only, do not categorize this as misgendering. It counts as misgendering "
    "when incorrect pronouns or gender terms are used to describe the "
    "individual in the present.\n"
    "Please identify whether there is misgendering in the following "
    "{nouns}.\n";

// Zero-shot instruction block for the edit prompt.
constexpr std::string_view kEditInstructions =
    "Misgendering is the act of using incorrect gendered terms for an "
    "individual, e.g. deadname, pronouns, titles, other gendered words etc. "
    "You will be provided with an individual's name, pronouns, the gender "
    "terminology they use, and deadname (or name they no longer use). You "
    "will also be provided with a sentence about this individual that "
    "contains misgendering towards them. Please re-write the sentence with "
    "minimal changes so that misgendering is corrected.\n";

struct DomainNouns {
  std::string_view singular;
  std::string_view plural;
  std::string_view field_label;
};

DomainNouns domain_nouns(Domain domain) {
  switch (domain) {
    case Domain::kXPost:
      return {"tweet", "tweets", "Tweet"};
    case Domain::kYouTubeComment:
      return {"YouTube comment", "YouTube comments", "YouTube Comment"};
    case Domain::kLlmGeneration:
      return {"sentence", "sentences", "Sentence"};
  }
  return {"text", "texts", "Text"};
}

std::string replace_all(std::string text, std::string_view needle,
                        std::string_view replacement) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), replacement);
    pos += replacement.size();
  }
  return text;
}

std::string escape_field(std::string_view value) {
  std::string out(value);
  for (char& c : out) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return out;
}

std::string render_pronoun_sets(const GenderProfile& profile) {
  std::string out;
  for (const PronounSet& set : profile.pronoun_sets) {
    if (!out.empty()) out += ", ";
    out += set.nominative + "/" + set.objective + "/" +
           set.possessive_determiner + "/" + set.possessive_pronoun + "/" +
           set.reflexive;
  }
  return out;
}

std::string render_categories(const GenderProfile& profile) {
  std::string out;
  for (TermCategory category : profile.term_categories) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(category));
  }
  return out;
}

std::string render_identities(const GenderProfile& profile) {
  std::string out;
  for (const std::string& identity : profile.gender_identities) {
    if (!out.empty()) out += ", ";
    out += identity;
  }
  return out;
}

std::size_t find_last_ci(const std::string& haystack_folded,
                         std::string_view needle) {
  return haystack_folded.rfind(needle);
}

}  // namespace

FewShotBanks FewShotBanks::load(const std::filesystem::path& dir) {
  FewShotBanks banks;
  for (std::string_view category : {"trans-woman", "trans-man", "non-binary"}) {
    const std::filesystem::path path = dir / (std::string(category) + ".txt");
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("missing few-shot bank: " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    FewShotBank bank;
    bank.category = category;
    bank.text = buffer.str();
    if (bank.text.empty() || bank.text.back() != '\n') bank.text += '\n';

    std::string block;
    std::istringstream lines(bank.text);
    std::string line;
    auto flush = [&] {
      if (block.empty()) return;
      if (!parse_detect_response(block).has_value()) {
        throw ConfigError("few-shot example without an answer line in " +
                          path.string());
      }
      bank.examples.push_back(block);
      block.clear();
    };
    while (std::getline(lines, line)) {
      if (line.empty()) {
        flush();
      } else {
        if (!block.empty()) block += '\n';
        block += line;
      }
    }
    flush();
    if (bank.examples.empty()) {
      throw ConfigError("empty few-shot bank: " + path.string());
    }
    banks.by_category.emplace(bank.category, std::move(bank));
  }
  return banks;
}

std::string fewshot_category(const GenderProfile& profile) {
  for (const std::string& identity : profile.gender_identities) {
    const std::string key = utf8::normalize_key(identity);
    if (key.find("trans woman") != std::string::npos ||
        key.find("transgender woman") != std::string::npos ||
        key.find("trans-woman") != std::string::npos) {
      return "trans-woman";
    }
    if (key.find("trans man") != std::string::npos ||
        key.find("transgender man") != std::string::npos ||
        key.find("trans-man") != std::string::npos) {
      return "trans-man";
    }
    if (key.find("non-binary") != std::string::npos ||
        key.find("non binary") != std::string::npos ||
        key.find("nonbinary") != std::string::npos ||
        key.find("genderqueer") != std::string::npos ||
        key.find("genderfluid") != std::string::npos) {
      return "non-binary";
    }
  }
  if (profile.term_categories == std::set<TermCategory>{TermCategory::kFeminine}) {
    return "trans-woman";
  }
  if (profile.term_categories == std::set<TermCategory>{TermCategory::kMasculine}) {
    return "trans-man";
  }
  return "non-binary";
}

const FewShotBank& FewShotBanks::for_profile(const GenderProfile& profile) const {
  const std::string category = fewshot_category(profile);
  auto it = by_category.find(category);
  if (it == by_category.end()) {
    throw ConfigError("no few-shot bank for category: " + category);
  }
  return it->second;
}

PromptBundle build_detect_prompt(const FewShotBanks& banks,
                                 const GenderProfile& profile,
                                 std::string_view text, Domain domain,
                                 bool include_gender_identity) {
  const DomainNouns nouns = domain_nouns(domain);
  PromptBundle bundle;
  bundle.system_instructions =
      replace_all(replace_all(std::string(kDetectInstructions), "{nouns}",
                              nouns.plural),
                  "{noun}", nouns.singular) +
      "\n";
  bundle.few_shot_block = banks.for_profile(profile).text + "\n";

  std::string block = "Person: " + escape_field(profile.name) + "\n";
  if (include_gender_identity && !profile.gender_identities.empty()) {
    block += "Gender Identity: " + escape_field(render_identities(profile)) + "\n";
  }
  block += "Pronouns: " + render_pronoun_sets(profile) + "\n";
  block += "Gendered Terms: " + render_categories(profile) + "\n";
  if (profile.deadname) {
    block += "Deadname: " + escape_field(*profile.deadname) + "\n";
  }
  block += std::string(nouns.field_label) + ": " + escape_field(text) + "\n";
  bundle.instance_block = std::move(block);

  bundle.assembled =
      bundle.system_instructions + bundle.few_shot_block + bundle.instance_block;
  return bundle;
}

std::optional<Label> parse_detect_response(std::string_view response) {
  const std::string folded = utf8::fold_utf8(response);
  const std::size_t yes = find_last_ci(folded, "yes misgendering");
  const std::size_t no = find_last_ci(folded, "no misgendering");
  if (yes == std::string::npos && no == std::string::npos) return std::nullopt;
  if (yes == std::string::npos) return Label::kNoMisgendering;
  if (no == std::string::npos) return Label::kMisgendering;
  return yes > no ? Label::kMisgendering : Label::kNoMisgendering;
}

PromptBundle build_edit_prompt(const GenderProfile& profile,
                               std::string_view sentence,
                               const std::optional<std::string>& context,
                               std::size_t sentence_count) {
  if (sentence.empty()) {
    throw ContractViolation("build_edit_prompt: empty sentence");
  }
  if (sentence_count > 1) {
    throw ContractViolation(
        "build_edit_prompt: input must be a single sentence; split first");
  }
  PromptBundle bundle;
  bundle.system_instructions = std::string(kEditInstructions) + "\n";
  bundle.few_shot_block = "";  // zero-shot

  std::string block = "Name: " + escape_field(profile.name) + "\n";
  block += "Pronouns: " + render_pronoun_sets(profile) + "\n";
  block += "Gendered Terms: " + render_categories(profile) + "\n";
  if (profile.deadname) {
    block += "Deadname: " + escape_field(*profile.deadname) + "\n";
  }
  if (context && !context->empty()) {
    block += "Context: " + escape_field(*context) + "\n";
  }
  block += "Sentence: " + escape_field(sentence) + "\n";
  bundle.instance_block = std::move(block);

  bundle.assembled =
      bundle.system_instructions + bundle.few_shot_block + bundle.instance_block;
  return bundle;
}

std::string prompt_fingerprint(std::string_view prompt) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : prompt) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

BackendConfig BackendConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open backend config: " + path);
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("backend config: " + std::string(e.what()));
  }
  BackendConfig config;
  config.endpoint = json.value("endpoint", "");
  config.model = json.value("model", "");
  config.temperature = json.value("temperature", 0.0);
  config.max_tokens = json.value("max_tokens", 512);
  config.timeout = std::chrono::milliseconds(json.value("timeout_ms", 30000));
  config.retries = json.value("retries", 2);
  config.api_key_env = json.value("api_key_env", "MISGENDER_API_KEY");
  config.replay_path = json.value("replay_path", "");
  config.replay_only = json.value("replay_only", false);
  return config;
}

CompletionBackend::CompletionBackend(BackendConfig config)
    : config_(std::move(config)) {
  if (config_.replay_path.empty()) return;
  std::ifstream in(config_.replay_path);
  if (!in) {
    throw ConfigError("cannot open replay fixture: " + config_.replay_path);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json json;
    try {
      json = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("replay fixture: " + std::string(e.what()));
    }
    replay_[json.at("fingerprint").get<std::string>()] =
        json.at("response").get<std::string>();
  }
}

void write_replay_fixture(std::ostream& out,
                          const std::map<std::string, std::string>& records) {
  for (const auto& [fingerprint, response] : records) {
    nlohmann::ordered_json json;
    json["fingerprint"] = fingerprint;
    json["response"] = response;
    out << json.dump() << '\n';
  }
}

}  // namespace misgender
