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

#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

#include "plabel/errors.hpp"
#include "plabel/unicode.hpp"

// Global Mapping File: equivalence classes of acceptable word spellings
// (homophones, transliteration variants). At scoring time every class
// member is folded to the class representative -- the first word listed --
// so spelling variation does not count as an error.

namespace plabel {

class GlmTable {
 public:
  // One tab-separated class per line, first entry is the representative.
  // '#' starts a comment, blank lines are ignored. Words are folded to
  // NFC. A word may belong to at most one class; singleton classes are
  // rejected since they map nothing.
  static GlmTable parse(std::istream& in) {
    GlmTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t") == std::string::npos) continue;

      std::vector<std::string> members;
      std::size_t pos = 0;
      while (pos <= line.size()) {
        auto tab = line.find('\t', pos);
        std::string word = line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos);
        auto b = word.find_first_not_of(" \t");
        auto e = word.find_last_not_of(" \t");
        if (b != std::string::npos) members.push_back(nfc_utf8(word.substr(b, e - b + 1)));
        if (tab == std::string::npos) break;
        pos = tab + 1;
      }
      if (members.empty()) continue;
      if (members.size() < 2)
        throw ParseError("equivalence class needs at least 2 words", line_no);

      const std::string& representative = members.front();
      for (const auto& word : members) {
        auto [it, inserted] = table.representative_.emplace(word, representative);
        if (!inserted && it->second != representative)
          throw ParseError("word \"" + word + "\" appears in more than one class", line_no);
        if (!inserted && it->second == representative)
          throw ParseError("word \"" + word + "\" listed twice", line_no);
      }
      table.classes_.push_back(std::move(members));
    }
    return table;
  }

  const std::string& canonical(const std::string& word) const {
    auto it = representative_.find(word);
    return it == representative_.end() ? word : it->second;
  }

  bool empty() const { return representative_.empty(); }
  const std::vector<std::vector<std::string>>& classes() const { return classes_; }

 private:
  std::unordered_map<std::string, std::string> representative_;
  std::vector<std::vector<std::string>> classes_;
};

inline std::vector<std::string> canonicalize(const std::vector<std::string>& tokens,
                                             const GlmTable& glm) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(glm.canonical(t));
  return out;
}

}  // namespace plabel
