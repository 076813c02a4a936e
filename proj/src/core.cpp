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

#include "misgender/core.hpp"

namespace misgender {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kMisgendering:
      return "Misgendering";
    case Label::kNoMisgendering:
      return "NoMisgendering";
  }
  return "";
}

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::kXPost:
      return "x-post";
    case Domain::kYouTubeComment:
      return "youtube-comment";
    case Domain::kLlmGeneration:
      return "llm-generation";
  }
  return "";
}

std::string_view to_string(TermCategory category) {
  switch (category) {
    case TermCategory::kFeminine:
      return "feminine";
    case TermCategory::kMasculine:
      return "masculine";
    case TermCategory::kNeutral:
      return "neutral";
  }
  return "";
}

std::string_view to_string(Agreement agreement) {
  switch (agreement) {
    case Agreement::kSingularVerb:
      return "singular-verb";
    case Agreement::kPluralVerb:
      return "plural-verb";
  }
  return "";
}

std::string_view to_string(FormSlot slot) {
  switch (slot) {
    case FormSlot::kNominative:
      return "nominative";
    case FormSlot::kObjective:
      return "objective";
    case FormSlot::kPossessiveDeterminer:
      return "possessive_determiner";
    case FormSlot::kPossessivePronoun:
      return "possessive_pronoun";
    case FormSlot::kReflexive:
      return "reflexive";
  }
  return "";
}

Label label_from_string(std::string_view text) {
  if (text == "Misgendering") return Label::kMisgendering;
  if (text == "NoMisgendering") return Label::kNoMisgendering;
  throw ParseError("unknown label: " + std::string(text));
}

Domain domain_from_string(std::string_view text) {
  if (text == "x-post") return Domain::kXPost;
  if (text == "youtube-comment") return Domain::kYouTubeComment;
  if (text == "llm-generation") return Domain::kLlmGeneration;
  throw ParseError("unknown domain: " + std::string(text));
}

TermCategory term_category_from_string(std::string_view text) {
  if (text == "feminine") return TermCategory::kFeminine;
  if (text == "masculine") return TermCategory::kMasculine;
  if (text == "neutral") return TermCategory::kNeutral;
  throw ParseError("unknown term category: " + std::string(text));
}

Agreement agreement_from_string(std::string_view text) {
  if (text == "singular-verb") return Agreement::kSingularVerb;
  if (text == "plural-verb") return Agreement::kPluralVerb;
  throw ParseError("unknown agreement flag: " + std::string(text));
}

}  // namespace misgender
