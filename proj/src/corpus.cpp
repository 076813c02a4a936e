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

#include "misgender/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "misgender/lexicon.hpp"
#include "misgender/utf8.hpp"

namespace misgender {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kUsernamePlaceholder = "[USERNAME]";

ContentInstance parse_record(const ordered_json& json, std::size_t line_no) {
  ContentInstance instance;
  instance.id = json.at("id").get<std::string>();
  instance.domain = domain_from_string(json.at("domain").get<std::string>());
  instance.text = json.at("text").get<std::string>();
  instance.subject_id = json.at("subject_id").get<std::string>();
  if (json.contains("context") && !json["context"].is_null()) {
    instance.context = json["context"].get<std::string>();
  }
  if (json.contains("gold_label") && !json["gold_label"].is_null()) {
    instance.gold_label = label_from_string(json["gold_label"].get<std::string>());
  }
  if (json.contains("gold_correction") && !json["gold_correction"].is_null()) {
    instance.gold_correction = json["gold_correction"].get<std::string>();
  }
  if (json.contains("label_provenance") && !json["label_provenance"].is_null()) {
    instance.label_provenance = json["label_provenance"].get<std::string>();
  }
  if (instance.gold_correction) {
    if (instance.domain != Domain::kLlmGeneration ||
        instance.gold_label != Label::kMisgendering) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": gold_correction is only valid on llm-generation "
                       "records labeled Misgendering");
    }
  }
  return instance;
}

std::string slugify(std::string_view text) {
  const std::string key = utf8::normalize_key(text);
  std::string out;
  bool dash = false;
  for (char32_t cp : utf8::decode(key)) {
    if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
      // Strip diacritics crudely for ids: keep ASCII, map the rest to their
      // folded UTF-8 bytes.
      out += utf8::encode(cp);
      dash = false;
    } else if (!dash && !out.empty()) {
      out += '-';
      dash = true;
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

// RFC-4180-ish CSV row reader (quotes, embedded commas and newlines).
bool read_csv_row(std::istream& in, std::vector<std::string>& cells) {
  cells.clear();
  std::string cell;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (!any) return false;
  cells.push_back(std::move(cell));
  return true;
}

std::string article_for(std::string_view word) {
  if (word.empty()) return "a";
  switch (word.front()) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return "an";
    default:
      return "a";
  }
}

// One seeded character transposition or insertion inside the word,
// re-drawn until the result is no longer a lexicon or pronoun surface.
std::string inject_typo(const EngineContext& ctx, const std::string& word,
                        std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::string mutated = word;
    if (rng() % 2 == 0 && word.size() >= 3) {
      const std::size_t pos = 1 + rng() % (word.size() - 2);
      std::swap(mutated[pos], mutated[pos - 1]);
    } else {
      const std::size_t pos = 1 + rng() % (word.size() - 1);
      const char extra = word[rng() % word.size()];
      mutated.insert(mutated.begin() + static_cast<std::ptrdiff_t>(pos), extra);
    }
    if (mutated != word && !ctx.terms.contains_surface(mutated) &&
        !ctx.pronouns.contains_surface(mutated)) {
      return mutated;
    }
  }
  return word + "zz";  // unreachable in practice; still not a lexicon word
}

}  // namespace

const char* const kChallengePhenomena[6] = {
    "temporal", "question-yes", "question-no", "agree", "disagree", "typo"};

DatasetManifest manifest_of(const std::vector<ContentInstance>& instances) {
  DatasetManifest manifest;
  for (const ContentInstance& instance : instances) {
    auto& counts = manifest.per_domain[instance.domain];
    ++counts.total;
    ++manifest.total;
    if (instance.gold_label == Label::kMisgendering) ++counts.misgendering;
    if (instance.gold_label == Label::kNoMisgendering) ++counts.no_misgendering;
  }
  return manifest;
}

std::pair<std::vector<ContentInstance>, DatasetManifest> load_dataset(
    std::istream& in, const std::set<std::string>* known_subjects) {
  std::vector<ContentInstance> instances;
  std::size_t discarded = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ordered_json json;
    try {
      json = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    // Irrelevant annotations are discarded, mirroring dataset construction.
    if (json.contains("gold_label") && json["gold_label"].is_string() &&
        json["gold_label"].get<std::string>() == "Irrelevant") {
      ++discarded;
      continue;
    }
    ContentInstance instance;
    try {
      instance = parse_record(json, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (known_subjects && !known_subjects->count(instance.subject_id)) {
      throw ReferenceError("line " + std::to_string(line_no) +
                           ": unknown subject_id '" + instance.subject_id + "'");
    }
    instances.push_back(std::move(instance));
  }
  DatasetManifest manifest = manifest_of(instances);
  manifest.discarded_irrelevant = discarded;
  return {std::move(instances), std::move(manifest)};
}

std::pair<std::vector<ContentInstance>, DatasetManifest> load_dataset_file(
    const std::string& path, const std::set<std::string>* known_subjects) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path);
  return load_dataset(in, known_subjects);
}

void save_dataset(std::ostream& out, const std::vector<ContentInstance>& instances) {
  for (const ContentInstance& instance : instances) {
    ordered_json json;
    json["id"] = instance.id;
    json["domain"] = std::string(to_string(instance.domain));
    json["text"] = instance.text;
    json["subject_id"] = instance.subject_id;
    if (instance.context) json["context"] = *instance.context;
    if (instance.gold_label) {
      json["gold_label"] = std::string(to_string(*instance.gold_label));
    }
    if (instance.gold_correction) {
      json["gold_correction"] = *instance.gold_correction;
    }
    if (instance.label_provenance) {
      json["label_provenance"] = *instance.label_provenance;
    }
    out << json.dump() << '\n';
  }
}

std::string normalize_handles(const std::string& text,
                              const std::set<std::string>& subject_handles) {
  std::set<std::string> folded_handles;
  for (const std::string& handle : subject_handles) {
    folded_handles.insert(utf8::fold_utf8(handle));
  }
  const std::u32string cps = utf8::decode(text);
  std::u32string out = cps;
  const std::vector<Token> tokens = tokenize(text);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (it->kind != TokenKind::kHandle) continue;
    const std::string name = it->folded.substr(1);  // drop '@'
    if (folded_handles.count(name)) continue;
    out.replace(it->span.begin, it->span.length(),
                utf8::decode(std::string(kUsernamePlaceholder)));
  }
  return utf8::encode(out);
}

std::vector<ContentInstance> import_released(
    std::istream& in, const std::vector<GenderProfile>& profiles) {
  std::unordered_map<std::string, std::string> subject_by_slug;
  for (const GenderProfile& profile : profiles) {
    subject_by_slug[slugify(profile.name)] = profile.id;
    subject_by_slug[profile.id] = profile.id;
  }

  std::vector<std::string> header;
  if (!read_csv_row(in, header)) {
    throw ParseError("released corpus: empty file");
  }
  std::unordered_map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    columns[utf8::normalize_key(header[i])] = i;
  }
  auto column = [&columns](std::string_view key) -> std::optional<std::size_t> {
    auto it = columns.find(std::string(key));
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto col_domain = column("domain");
  const auto col_name = column("name");
  const auto col_text = column("text");
  const auto col_label = column("label");
  const auto col_correction = column("correction");
  const auto col_context = column("context");
  if (!col_domain || !col_name || !col_text || !col_label) {
    throw ParseError("released corpus: need domain,name,text,label columns");
  }

  std::vector<ContentInstance> instances;
  std::vector<std::string> cells;
  std::size_t row_no = 1;
  while (read_csv_row(in, cells)) {
    ++row_no;
    if (cells.size() == 1 && cells[0].empty()) continue;
    auto cell = [&cells](std::optional<std::size_t> index) -> std::string {
      if (!index || *index >= cells.size()) return "";
      return cells[*index];
    };
    const std::string label_raw = utf8::normalize_key(cell(col_label));
    if (label_raw == "irrelevant") continue;

    ContentInstance instance;
    const std::string domain_raw = utf8::normalize_key(cell(col_domain));
    if (domain_raw == "x-post" || domain_raw == "x" || domain_raw == "twitter" ||
        domain_raw == "tweet" || domain_raw == "x posts" || domain_raw == "tweets") {
      instance.domain = Domain::kXPost;
    } else if (domain_raw == "youtube" || domain_raw == "youtube-comment" ||
               domain_raw == "youtube comments" || domain_raw == "yt") {
      instance.domain = Domain::kYouTubeComment;
    } else if (domain_raw == "llm" || domain_raw == "llm-generation" ||
               domain_raw == "llm generations" || domain_raw == "generation") {
      instance.domain = Domain::kLlmGeneration;
    } else {
      throw ParseError("released corpus row " + std::to_string(row_no) +
                       ": unknown domain '" + cell(col_domain) + "'");
    }
    const std::string slug = slugify(cell(col_name));
    auto subject = subject_by_slug.find(slug);
    if (subject == subject_by_slug.end()) {
      throw ReferenceError("released corpus row " + std::to_string(row_no) +
                           ": no profile for '" + cell(col_name) + "'");
    }
    instance.subject_id = subject->second;
    instance.id = "rel-" + std::to_string(row_no);
    instance.text = cell(col_text);
    if (label_raw == "misgendering") {
      instance.gold_label = Label::kMisgendering;
    } else if (label_raw == "no misgendering" || label_raw == "nomisgendering") {
      instance.gold_label = Label::kNoMisgendering;
    } else {
      throw ParseError("released corpus row " + std::to_string(row_no) +
                       ": unknown label '" + cell(col_label) + "'");
    }
    const std::string correction = cell(col_correction);
    if (!correction.empty() && instance.domain == Domain::kLlmGeneration &&
        instance.gold_label == Label::kMisgendering) {
      instance.gold_correction = correction;
    }
    const std::string context = cell(col_context);
    if (!context.empty()) instance.context = context;
    instance.label_provenance = "paper";
    instances.push_back(std::move(instance));
  }
  return instances;
}

std::vector<ContentInstance> generate_challenges(
    const EngineContext& ctx, const std::vector<GenderProfile>& profiles,
    const ChallengeOptions& options, std::vector<std::string>* warnings) {
  if (profiles.empty()) {
    throw ContractViolation("generate_challenges: no profiles");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<ContentInstance> instances;

  for (const GenderProfile& profile : profiles) {
    const InappropriateInventory inventory =
        inappropriate_inventory(ctx.pronouns, profile);
    std::vector<std::pair<std::size_t, TermCategory>> pool;
    for (std::size_t row = 0; row < ctx.terms.rows().size(); ++row) {
      for (TermCategory category : inventory.categories) {
        pool.emplace_back(row, category);
      }
    }
    if (pool.empty()) {
      if (warnings) {
        warnings->push_back("profile " + profile.id +
                            " accepts every category; skipped");
      }
      continue;
    }

    const TermCategory target =
        profile.term_categories.count(TermCategory::kNeutral)
            ? TermCategory::kNeutral
            : *profile.term_categories.begin();

    for (std::size_t variant = 0; variant < options.variants_per_phenomenon;
         ++variant) {
      for (const char* phenomenon : kChallengePhenomena) {
        const auto& [row_index, category] = pool[rng() % pool.size()];
        const GenderedTermRow& row = ctx.terms.rows()[row_index];
        const std::string& term = equivalent_term(row, category);
        const std::string& fixed = equivalent_term(row, target);
        const std::string article = article_for(term);
        const std::string name = profile.name;

        ContentInstance instance;
        instance.domain = Domain::kLlmGeneration;
        instance.subject_id = profile.id;
        instance.id = "gen-" + profile.id + "-" + phenomenon + "-" +
                      std::to_string(variant);

        const std::string_view kind = phenomenon;
        if (kind == "temporal") {
          instance.text = "While I used to think of " + name +
                          " as a conventional " + term +
                          ", I do not think so anymore.";
          instance.gold_label = Label::kNoMisgendering;
          instance.label_provenance = "paper";
        } else if (kind == "question-yes") {
          instance.text = "Is " + name + " " + article + " " + term +
                          "? Yes, I believe so.";
          instance.gold_label = Label::kMisgendering;
          instance.label_provenance = "convention";
          instance.gold_correction = "Is " + name + " " + article_for(fixed) +
                                     " " + fixed + "? Yes, I believe so.";
        } else if (kind == "question-no") {
          instance.text =
              "Is " + name + " " + article + " " + term + "? No, not at all.";
          instance.gold_label = Label::kNoMisgendering;
          instance.label_provenance = "convention";
        } else if (kind == "agree") {
          instance.text = "While some people might think of " + name + " as " +
                          article + " " + term + ", I do agree with this.";
          instance.gold_label = Label::kMisgendering;
          instance.label_provenance = "convention";
          instance.gold_correction = "While some people might think of " + name +
                                     " as " + article_for(fixed) + " " + fixed +
                                     ", I do agree with this.";
        } else if (kind == "disagree") {
          instance.text = "While some people might think of " + name + " as " +
                          article + " " + term + ", I do not agree with this.";
          instance.gold_label = Label::kNoMisgendering;
          instance.label_provenance = "convention";
        } else {  // typo
          const std::string typo = inject_typo(ctx, term, rng);
          instance.text = name + " is a renowned " + typo +
                          " in the industry, consistently earning praise.";
          instance.gold_label = Label::kMisgendering;
          instance.label_provenance = "paper";
          instance.gold_correction = name + " is a renowned " + fixed +
                                     " in the industry, consistently earning "
                                     "praise.";
        }
        instances.push_back(std::move(instance));
      }
    }
  }
  return instances;
}

}  // namespace misgender
