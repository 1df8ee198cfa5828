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

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "plabel/errors.hpp"
#include "plabel/unicode.hpp"

// Evaluation-time text normalization: NFC, punctuation removal, Bangla
// number-to-word expansion, whitespace canonicalization. The pipeline is
// idempotent, so references and hypotheses can be normalized any number
// of times without drift.

namespace plabel {

struct NormalizationConfig {
  bool remove_punctuation = true;
  bool numbers_to_words = true;
  std::unordered_set<char32_t> extra_punct;  // removed in addition to Unicode P*
};

// Integer -> word table driving number expansion. 0..99 are base names,
// 100..900 fused hundred tokens, 1000/100000/10000000 the multiplier
// words of the lakh/crore grouping system. Shipped as
// data/bangla_numerals.tsv so the spellings can be audited and adjusted
// without touching code.
class NumeralTable {
 public:
  static NumeralTable parse(std::istream& in) {
    NumeralTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw ParseError("expected <integer>\\t<word>", line_no);
      std::int64_t value;
      try {
        value = std::stoll(line.substr(0, tab));
      } catch (const std::exception&) {
        throw ParseError("bad integer \"" + line.substr(0, tab) + "\"", line_no);
      }
      std::string word = line.substr(tab + 1);
      if (word.empty()) throw ParseError("empty word", line_no);
      if (!t.words_.emplace(value, nfc_utf8(word)).second)
        throw ParseError("duplicate entry for " + std::to_string(value), line_no);
    }
    t.validate();
    return t;
  }

  static const NumeralTable& default_table();

  const std::string& word(std::int64_t value) const {
    auto it = words_.find(value);
    if (it == words_.end())
      throw ParseError("numeral table has no entry for " + std::to_string(value));
    return it->second;
  }

 private:
  void validate() const {
    for (std::int64_t v = 0; v <= 99; ++v) word(v);
    for (std::int64_t v = 100; v <= 900; v += 100) word(v);
    word(1000);
    word(100000);
    word(10000000);
  }

  std::map<std::int64_t, std::string> words_;
};

namespace detail {

// Mirrors data/bangla_numerals.tsv; a test keeps the two in sync.
inline constexpr const char* kDefaultNumeralTsv =
    "0\tশূন্য\n1\tএক\n2\tদুই\n3\tতিন\n4\tচার\n5\tপাঁচ\n6\tছয়\n7\tসাত\n8\tআট\n9\tনয়\n"
    "10\tদশ\n11\tএগারো\n12\tবারো\n13\tতেরো\n14\tচোদ্দ\n15\tপনেরো\n16\tষোলো\n17\tসতেরো\n"
    "18\tআঠারো\n19\tউনিশ\n20\tবিশ\n21\tএকুশ\n22\tবাইশ\n23\tতেইশ\n24\tচব্বিশ\n25\tপঁচিশ\n"
    "26\tছাব্বিশ\n27\tসাতাশ\n28\tআঠাশ\n29\tঊনত্রিশ\n30\tত্রিশ\n31\tএকত্রিশ\n32\tবত্রিশ\n"
    "33\tতেত্রিশ\n34\tচৌত্রিশ\n35\tপঁয়ত্রিশ\n36\tছত্রিশ\n37\tসাঁইত্রিশ\n38\tআটত্রিশ\n"
    "39\tঊনচল্লিশ\n40\tচল্লিশ\n41\tএকচল্লিশ\n42\tবিয়াল্লিশ\n43\tতেতাল্লিশ\n44\tচুয়াল্লিশ\n"
    "45\tপঁয়তাল্লিশ\n46\tছেচল্লিশ\n47\tসাতচল্লিশ\n48\tআটচল্লিশ\n49\tঊনপঞ্চাশ\n50\tপঞ্চাশ\n"
    "51\tএকান্ন\n52\tবাহান্ন\n53\tতিপ্পান্ন\n54\tচুয়ান্ন\n55\tপঞ্চান্ন\n56\tছাপ্পান্ন\n"
    "57\tসাতান্ন\n58\tআটান্ন\n59\tঊনষাট\n60\tষাট\n61\tএকষট্টি\n62\tবাষট্টি\n63\tতেষট্টি\n"
    "64\tচৌষট্টি\n65\tপঁয়ষট্টি\n66\tছেষট্টি\n67\tসাতষট্টি\n68\tআটষট্টি\n69\tঊনসত্তর\n"
    "70\tসত্তর\n71\tএকাত্তর\n72\tবাহাত্তর\n73\tতিয়াত্তর\n74\tচুয়াত্তর\n75\tপঁচাত্তর\n"
    "76\tছিয়াত্তর\n77\tসাতাত্তর\n78\tআটাত্তর\n79\tঊনআশি\n80\tআশি\n81\tএকাশি\n82\tবিরাশি\n"
    "83\tতিরাশি\n84\tচুরাশি\n85\tপঁচাশি\n86\tছিয়াশি\n87\tসাতাশি\n88\tআটাশি\n89\tঊননব্বই\n"
    "90\tনব্বই\n91\tএকানব্বই\n92\tবিরানব্বই\n93\tতিরানব্বই\n94\tচুরানব্বই\n95\tপঁচানব্বই\n"
    "96\tছিয়ানব্বই\n97\tসাতানব্বই\n98\tআটানব্বই\n99\tনিরানব্বই\n"
    "100\tএকশো\n200\tদুইশো\n300\tতিনশো\n400\tচারশো\n500\tপাঁচশো\n600\tছয়শো\n700\tসাতশো\n"
    "800\tআটশো\n900\tনয়শো\n1000\tহাজার\n100000\tলাখ\n10000000\tকোটি\n";

}  // namespace detail

inline const NumeralTable& NumeralTable::default_table() {
  static const NumeralTable table = [] {
    std::istringstream in(detail::kDefaultNumeralTsv);
    return parse(in);
  }();
  return table;
}

// Standard Bangla naming with lakh/crore grouping for values below 10^8;
// longer numbers are read digit by digit. The token may use ASCII or
// Bangla digits (mixed is tolerated).
inline std::vector<std::string> number_to_words(
    const std::string& token, const NumeralTable& table = NumeralTable::default_table()) {
  std::u32string cps = decode_utf8(token);
  if (cps.empty()) throw ParseError("number_to_words: empty token");
  for (char32_t cp : cps) {
    if (!is_convertible_digit(cp))
      throw ParseError("number_to_words: non-digit codepoint in \"" + token + "\"");
  }

  std::size_t first_nonzero = 0;
  while (first_nonzero < cps.size() - 1 && digit_value(cps[first_nonzero]) == 0) ++first_nonzero;
  std::size_t significant = cps.size() - first_nonzero;

  std::vector<std::string> out;
  if (significant > 8) {
    for (char32_t cp : cps) out.push_back(table.word(digit_value(cp)));
    return out;
  }

  std::int64_t value = 0;
  for (std::size_t i = first_nonzero; i < cps.size(); ++i)
    value = value * 10 + digit_value(cps[i]);

  if (value == 0) return {table.word(0)};
  std::int64_t crore = value / 10000000;
  std::int64_t lakh = (value / 100000) % 100;
  std::int64_t thousand = (value / 1000) % 100;
  std::int64_t hundred = (value / 100) % 10;
  std::int64_t rest = value % 100;
  if (crore > 0) {
    out.push_back(table.word(crore));
    out.push_back(table.word(10000000));
  }
  if (lakh > 0) {
    out.push_back(table.word(lakh));
    out.push_back(table.word(100000));
  }
  if (thousand > 0) {
    out.push_back(table.word(thousand));
    out.push_back(table.word(1000));
  }
  if (hundred > 0) out.push_back(table.word(hundred * 100));
  if (rest > 0) out.push_back(table.word(rest));
  return out;
}

// NFC -> remove punctuation -> expand standalone integer tokens -> collapse
// whitespace. Punctuation codepoints are deleted outright (not replaced by
// spaces), so normalization never splits a token. Digits embedded in
// alphanumeric tokens pass through untouched.
inline std::string normalize(const std::string& text, const NormalizationConfig& cfg = {},
                             const NumeralTable& table = NumeralTable::default_table()) {
  std::u32string cps = nfc(decode_utf8(text));

  if (cfg.remove_punctuation) {
    std::u32string kept;
    kept.reserve(cps.size());
    for (char32_t cp : cps) {
      if (is_punctuation(cp) || cfg.extra_punct.count(cp)) continue;
      kept.push_back(cp);
    }
    cps.swap(kept);
  }

  std::vector<std::u32string> tokens;
  std::u32string current;
  for (char32_t cp : cps) {
    if (is_whitespace(cp)) {
      if (!current.empty()) tokens.push_back(std::exchange(current, {}));
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));

  std::string out;
  for (const auto& token : tokens) {
    bool all_digits = !token.empty();
    for (char32_t cp : token) {
      if (!is_convertible_digit(cp)) {
        all_digits = false;
        break;
      }
    }
    if (cfg.numbers_to_words && all_digits) {
      for (const auto& word : number_to_words(encode_utf8(token), table)) {
        if (!out.empty()) out.push_back(' ');
        out += word;
      }
    } else {
      if (!out.empty()) out.push_back(' ');
      out += encode_utf8(token);
    }
  }
  return out;
}

inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t cp : decode_utf8(text)) {
    if (is_whitespace(cp)) {
      if (!current.empty()) {
        tokens.push_back(encode_utf8(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

}  // namespace plabel
