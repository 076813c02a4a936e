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
// Minimal UTF-8 / code-point utilities. All spans in this project are
// measured in code points, so every module funnels text through here.
// Case folding and composition cover ASCII, Latin-1, Latin Extended-A,
// Greek and basic Cyrillic, which is enough for the bundled corpora;
// anything else passes through unchanged.

#ifndef MISGENDER_UTF8_HPP_
#define MISGENDER_UTF8_HPP_

#include <string>
#include <string_view>

namespace misgender::utf8 {

// Decodes UTF-8 into code points. Invalid sequences become U+FFFD so that
// decoding is total and deterministic on arbitrary social-media bytes.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

std::size_t count_code_points(std::string_view text);

char32_t fold(char32_t cp);
char32_t to_upper(char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_upper(char32_t cp);

// Lowercase fold of a UTF-8 string. Curly apostrophes (U+2019) fold to
// ASCII apostrophes so lexicon keys match both typographies.
std::string fold_utf8(std::string_view text);

// Composes combining accents with their base letters where a precomposed
// Latin code point exists (the NFC cases that occur in person names).
std::u32string compose(std::u32string_view cps);

// Canonical comparison key: compose + case fold + collapse interior
// whitespace runs to single spaces + trim.
std::string normalize_key(std::string_view text);

}  // namespace misgender::utf8

#endif  // MISGENDER_UTF8_HPP_
