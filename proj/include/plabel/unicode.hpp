// Copyright (c) 2026, the plabel authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plabel/unicode_data.hpp"

// Self-contained Unicode support: UTF-8 codec, canonical normalization
// (NFC), and the category predicates the pipeline needs. Tables are
// generated from the Unicode character database by
// scripts/gen_unicode_tables.py; Hangul syllables are handled
// algorithmically per UAX #15.

namespace plabel {

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr char32_t kHangulSBase = 0xAC00;
inline constexpr char32_t kHangulLBase = 0x1100;
inline constexpr char32_t kHangulVBase = 0x1161;
inline constexpr char32_t kHangulTBase = 0x11A7;
inline constexpr int kHangulVCount = 21;
inline constexpr int kHangulTCount = 28;
inline constexpr int kHangulNCount = kHangulVCount * kHangulTCount;  // 588
inline constexpr int kHangulSCount = 11172;

inline bool in_ranges(const unicode_data::Range* first, const unicode_data::Range* last,
                      char32_t cp) {
  auto it = std::upper_bound(first, last, static_cast<std::uint32_t>(cp),
                             [](std::uint32_t v, const unicode_data::Range& r) { return v < r.lo; });
  return it != first && static_cast<std::uint32_t>(cp) <= (it - 1)->hi;
}

}  // namespace detail

inline int combining_class(char32_t cp) {
  const auto* first = std::begin(unicode_data::kCombiningClasses);
  const auto* last = std::end(unicode_data::kCombiningClasses);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(cp),
                             [](const unicode_data::CccEntry& e, std::uint32_t v) { return e.cp < v; });
  if (it != last && it->cp == static_cast<std::uint32_t>(cp)) return it->ccc;
  return 0;
}

inline bool is_punctuation(char32_t cp) {
  return detail::in_ranges(std::begin(unicode_data::kPunctuationRanges),
                           std::end(unicode_data::kPunctuationRanges), cp);
}

inline bool is_whitespace(char32_t cp) {
  const auto* first = std::begin(unicode_data::kWhitespace);
  const auto* last = std::end(unicode_data::kWhitespace);
  return std::binary_search(first, last, static_cast<std::uint32_t>(cp));
}

inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// Bengali digits occupy U+09E6..U+09EF.
inline bool is_bangla_digit(char32_t cp) { return cp >= 0x09E6 && cp <= 0x09EF; }

inline bool is_convertible_digit(char32_t cp) {
  return is_ascii_digit(cp) || is_bangla_digit(cp);
}

inline int digit_value(char32_t cp) {
  if (is_ascii_digit(cp)) return static_cast<int>(cp - U'0');
  if (is_bangla_digit(cp)) return static_cast<int>(cp - 0x09E6);
  return -1;
}

// ---------------------------------------------------------------------------
// UTF-8 codec

inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + len > s.size()) throw EncodingError("truncated UTF-8 sequence at offset " + std::to_string(i));
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) throw EncodingError("invalid UTF-8 continuation at offset " + std::to_string(i + k));
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (len > 1 && cp < kMin[len]) throw EncodingError("overlong UTF-8 sequence at offset " + std::to_string(i));
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw EncodingError("invalid scalar value at offset " + std::to_string(i));
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
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
}

inline std::string encode_utf8(const std::u32string& cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

// ---------------------------------------------------------------------------
// NFC (UAX #15)

namespace detail {

inline void decompose_cp(char32_t cp, std::u32string& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    int s = static_cast<int>(cp - kHangulSBase);
    out.push_back(kHangulLBase + s / kHangulNCount);
    out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
    int t = s % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  const auto* first = std::begin(unicode_data::kDecompositions);
  const auto* last = std::end(unicode_data::kDecompositions);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(cp),
                             [](const unicode_data::DecompEntry& e, std::uint32_t v) { return e.cp < v; });
  if (it != last && it->cp == static_cast<std::uint32_t>(cp)) {
    for (std::uint32_t k = 0; k < it->len; ++k)
      out.push_back(static_cast<char32_t>(unicode_data::kDecompositionPool[it->offset + k]));
    return;
  }
  out.push_back(cp);
}

inline char32_t compose_pair(char32_t a, char32_t b) {
  // Hangul LV and LVT composition.
  if (a >= kHangulLBase && a < kHangulLBase + 19 && b >= kHangulVBase &&
      b < kHangulVBase + kHangulVCount) {
    return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
      (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
      b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  std::uint64_t key = (static_cast<std::uint64_t>(a) << 21) | static_cast<std::uint64_t>(b);
  const auto* first = std::begin(unicode_data::kCompositionPairs);
  const auto* last = std::end(unicode_data::kCompositionPairs);
  auto it = std::lower_bound(first, last, key,
                             [](const unicode_data::CompEntry& e, std::uint64_t v) { return e.key < v; });
  if (it != last && it->key == key) return static_cast<char32_t>(it->composed);
  return 0;
}

}  // namespace detail

inline std::u32string nfc(const std::u32string& input) {
  // Fast path: pure ASCII (and anything below the first combining mark)
  // is already normalized.
  bool simple = true;
  for (char32_t cp : input) {
    if (cp >= 0x300) {
      simple = false;
      break;
    }
  }
  if (simple) return input;

  // 1. Canonical decomposition.
  std::u32string buf;
  buf.reserve(input.size() + 8);
  for (char32_t cp : input) detail::decompose_cp(cp, buf);

  // 2. Canonical ordering: stable sort runs of nonzero-ccc marks.
  for (std::size_t i = 1; i < buf.size(); ++i) {
    int cc = combining_class(buf[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(buf[j - 1]) > cc) {
      std::swap(buf[j - 1], buf[j]);
      --j;
    }
  }

  // 3. Canonical composition.
  std::u32string out;
  out.reserve(buf.size());
  std::ptrdiff_t last_starter = -1;
  for (char32_t cp : buf) {
    int cc = combining_class(cp);
    if (last_starter >= 0) {
      bool blocked = false;
      if (static_cast<std::size_t>(last_starter) != out.size() - 1) {
        int prev_cc = combining_class(out.back());
        blocked = prev_cc >= cc;
      }
      if (!blocked) {
        if (char32_t composed = detail::compose_pair(out[last_starter], cp)) {
          out[last_starter] = composed;
          continue;
        }
      }
    }
    if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size());
    out.push_back(cp);
  }
  return out;
}

inline std::string nfc_utf8(std::string_view s) { return encode_utf8(nfc(decode_utf8(s))); }

// ---------------------------------------------------------------------------
// Grapheme clusters
//
// Approximation of UAX #29 extended grapheme clusters tuned for Indic
// scripts: a cluster is a base codepoint plus trailing Mn/Me marks,
// spacing marks (Mc), ZWJ/ZWNJ, and -- approximating the Indic conjunct
// rule -- the codepoint following a virama (ccc 9), so Bangla conjuncts
// like U+0995 U+09CD U+09A4 count as one cluster.

inline bool is_grapheme_extender(char32_t cp) {
  if (cp == 0x200C || cp == 0x200D) return true;  // ZWNJ / ZWJ
  return detail::in_ranges(std::begin(unicode_data::kExtendRanges),
                           std::end(unicode_data::kExtendRanges), cp) ||
         detail::in_ranges(std::begin(unicode_data::kSpacingMarkRanges),
                           std::end(unicode_data::kSpacingMarkRanges), cp);
}

inline std::size_t grapheme_cluster_count(const std::u32string& cps) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    ++count;
    char32_t prev = cps[i];
    ++i;
    while (i < cps.size()) {
      char32_t cp = cps[i];
      if (is_grapheme_extender(cp)) {
        prev = cp;
        ++i;
      } else if (combining_class(prev) == 9 && !is_whitespace(cp) && !is_punctuation(cp)) {
        // virama glues the following base into the cluster
        prev = cp;
        ++i;
      } else {
        break;
      }
    }
  }
  return count;
}

inline std::size_t codepoint_count(std::string_view s) { return decode_utf8(s).size(); }

}  // namespace plabel
