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

#ifndef MISGENDER_CORE_HPP_
#define MISGENDER_CORE_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace misgender {

// Half-open [begin, end) range, measured in Unicode code points.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - begin; }
  bool contains(const Span& inner) const {
    return begin <= inner.begin && inner.end <= end;
  }
  bool overlaps(const Span& other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

enum class Label { kMisgendering, kNoMisgendering };

enum class Domain { kXPost, kYouTubeComment, kLlmGeneration };

enum class TermCategory { kFeminine, kMasculine, kNeutral };

enum class Agreement { kSingularVerb, kPluralVerb };

enum class FormSlot {
  kNominative,
  kObjective,
  kPossessiveDeterminer,
  kPossessivePronoun,
  kReflexive,
};

std::string_view to_string(Label label);
std::string_view to_string(Domain domain);
std::string_view to_string(TermCategory category);
std::string_view to_string(Agreement agreement);
std::string_view to_string(FormSlot slot);

Label label_from_string(std::string_view text);
Domain domain_from_string(std::string_view text);
TermCategory term_category_from_string(std::string_view text);
Agreement agreement_from_string(std::string_view text);

// Base error; subclasses distinguish user-facing failure classes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration (bad flags, missing resources).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller violated a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Record refers to an unknown entity (e.g. subject id without a profile).
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// External coreference adapter could not be reached or timed out.
class ResolverUnavailable : public Error {
 public:
  using Error::Error;
};

// External adapter answered with a malformed or out-of-contract message.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Completion backend transport or HTTP failure.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace misgender

#endif  // MISGENDER_CORE_HPP_
