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

#include "misgender/utf8.hpp"

#include <array>
#include <unordered_map>

namespace misgender::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Precomposed forms for base letter + combining mark, U+0300..U+0327 range.
// Keyed as (base << 16) | mark.
const std::unordered_map<uint32_t, char32_t>& composition_table() {
  static const std::unordered_map<uint32_t, char32_t> table = [] {
    std::unordered_map<uint32_t, char32_t> t;
    auto add = [&t](char32_t base, char32_t mark, char32_t composed) {
      t[(static_cast<uint32_t>(base) << 16) | static_cast<uint32_t>(mark)] =
          composed;
    };
    // grave U+0300
    add(U'a', 0x300, 0x00E0); add(U'e', 0x300, 0x00E8); add(U'i', 0x300, 0x00EC);
    add(U'o', 0x300, 0x00F2); add(U'u', 0x300, 0x00F9);
    add(U'A', 0x300, 0x00C0); add(U'E', 0x300, 0x00C8); add(U'I', 0x300, 0x00CC);
    add(U'O', 0x300, 0x00D2); add(U'U', 0x300, 0x00D9);
    // acute U+0301
    add(U'a', 0x301, 0x00E1); add(U'e', 0x301, 0x00E9); add(U'i', 0x301, 0x00ED);
    add(U'o', 0x301, 0x00F3); add(U'u', 0x301, 0x00FA); add(U'y', 0x301, 0x00FD);
    add(U'c', 0x301, 0x0107); add(U's', 0x301, 0x015B); add(U'z', 0x301, 0x017A);
    add(U'n', 0x301, 0x0144);
    add(U'A', 0x301, 0x00C1); add(U'E', 0x301, 0x00C9); add(U'I', 0x301, 0x00CD);
    add(U'O', 0x301, 0x00D3); add(U'U', 0x301, 0x00DA); add(U'Y', 0x301, 0x00DD);
    add(U'C', 0x301, 0x0106); add(U'S', 0x301, 0x015A); add(U'Z', 0x301, 0x0179);
    add(U'N', 0x301, 0x0143);
    // circumflex U+0302
    add(U'a', 0x302, 0x00E2); add(U'e', 0x302, 0x00EA); add(U'i', 0x302, 0x00EE);
    add(U'o', 0x302, 0x00F4); add(U'u', 0x302, 0x00FB);
    add(U'A', 0x302, 0x00C2); add(U'E', 0x302, 0x00CA); add(U'I', 0x302, 0x00CE);
    add(U'O', 0x302, 0x00D4); add(U'U', 0x302, 0x00DB);
    // tilde U+0303
    add(U'a', 0x303, 0x00E3); add(U'n', 0x303, 0x00F1); add(U'o', 0x303, 0x00F5);
    add(U'A', 0x303, 0x00C3); add(U'N', 0x303, 0x00D1); add(U'O', 0x303, 0x00D5);
    // diaeresis U+0308
    add(U'a', 0x308, 0x00E4); add(U'e', 0x308, 0x00EB); add(U'i', 0x308, 0x00EF);
    add(U'o', 0x308, 0x00F6); add(U'u', 0x308, 0x00FC); add(U'y', 0x308, 0x00FF);
    add(U'A', 0x308, 0x00C4); add(U'E', 0x308, 0x00CB); add(U'I', 0x308, 0x00CF);
    add(U'O', 0x308, 0x00D6); add(U'U', 0x308, 0x00DC);
    // ring U+030A
    add(U'a', 0x30A, 0x00E5); add(U'A', 0x30A, 0x00C5);
    // caron U+030C
    add(U'c', 0x30C, 0x010D); add(U's', 0x30C, 0x0161); add(U'z', 0x30C, 0x017E);
    add(U'C', 0x30C, 0x010C); add(U'S', 0x30C, 0x0160); add(U'Z', 0x30C, 0x017D);
    // cedilla U+0327
    add(U'c', 0x327, 0x00E7); add(U'C', 0x327, 0x00C7);
    return t;
  }();
  return table;
}

}  // namespace

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool valid = true;
    for (int k = 1; k < len; ++k) {
      const auto bk = static_cast<unsigned char>(text[i + k]);
      if ((bk & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!valid || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF) ||
        (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += encode(cp);
  return out;
}

std::size_t count_code_points(std::string_view text) {
  return decode(text).size();
}

char32_t fold(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp == 0x2019) return U'\'';  // curly apostrophe
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  if (cp == 0x0130) return U'i';  // dotted capital I
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 32;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  return cp;
}

char32_t to_upper(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 32;
  if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 32;
  if (cp == 0x00FF) return 0x0178;
  if (cp >= 0x0101 && cp <= 0x0138) return (cp % 2 == 1) ? cp - 1 : cp;
  if (cp >= 0x013A && cp <= 0x0149) return (cp % 2 == 0) ? cp - 1 : cp;
  if (cp >= 0x014B && cp <= 0x0178) return (cp % 2 == 1) ? cp - 1 : cp;
  if (cp >= 0x017A && cp <= 0x017F) return (cp % 2 == 0) ? cp - 1 : cp;
  if (cp >= 0x03B1 && cp <= 0x03C9 && cp != 0x03C2) return cp - 32;
  if (cp >= 0x0430 && cp <= 0x044F) return cp - 32;
  return cp;
}

bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7) return true;
  if (cp >= 0x0370 && cp <= 0x04FF) return true;   // Greek, Cyrillic
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;   // Latin Extended Additional
  return false;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0x00A0 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x3000;
}

bool is_upper(char32_t cp) { return is_letter(cp) && fold(cp) != cp; }

std::string fold_utf8(std::string_view text) {
  std::u32string cps = decode(text);
  for (auto& cp : cps) cp = fold(cp);
  return encode(cps);
}

std::u32string compose(std::u32string_view cps) {
  std::u32string out;
  out.reserve(cps.size());
  const auto& table = composition_table();
  for (char32_t cp : cps) {
    if (!out.empty() && cp >= 0x0300 && cp <= 0x0327) {
      const uint32_t key =
          (static_cast<uint32_t>(out.back()) << 16) | static_cast<uint32_t>(cp);
      auto it = table.find(key);
      if (it != table.end()) {
        out.back() = it->second;
        continue;
      }
    }
    out.push_back(cp);
  }
  return out;
}

std::string normalize_key(std::string_view text) {
  std::u32string cps = compose(decode(text));
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(fold(cp));
  }
  return encode(out);
}

}  // namespace misgender::utf8
