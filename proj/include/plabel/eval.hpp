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

#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plabel/glm.hpp"
#include "plabel/textnorm.hpp"
#include "plabel/unicode.hpp"

// GLM-aware WER/CER scoring. Both reference and hypothesis are
// normalized, tokenized, canonicalized through the GLM, and aligned with
// unit-cost edit distance. Corpus results are pooled as total errors over
// total reference tokens (the sclite convention), never a mean of
// per-utterance ratios.

namespace plabel {

enum class EditOp { Match, Substitute, Delete, Insert };

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

struct AlignStep {
  EditOp op = EditOp::Match;
  std::size_t ref_index = kNoIndex;
  std::size_t hyp_index = kNoIndex;
};

struct Alignment {
  std::vector<AlignStep> steps;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t cost() const { return substitutions + deletions + insertions; }
};

// Minimum-edit-cost alignment with unit costs. Ties are resolved
// left-to-right preferring Match > Substitute > Delete > Insert, which
// pins down a single alignment for any input pair.
template <typename Token>
Alignment align_sequences(std::span<const Token> ref, std::span<const Token> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // suffix_cost[i][j] = cost of aligning ref[i..n) against hyp[j..m)
  std::vector<std::uint32_t> suffix((n + 1) * (m + 1));
  auto cost = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return suffix[i * (m + 1) + j];
  };
  for (std::size_t j = 0; j <= m; ++j) cost(n, j) = static_cast<std::uint32_t>(m - j);
  for (std::size_t i = 0; i <= n; ++i) cost(i, m) = static_cast<std::uint32_t>(n - i);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      std::uint32_t diag = cost(i + 1, j + 1) + (ref[i] == hyp[j] ? 0 : 1);
      std::uint32_t del = cost(i + 1, j) + 1;
      std::uint32_t ins = cost(i, j + 1) + 1;
      cost(i, j) = std::min(diag, std::min(del, ins));
    }
  }

  Alignment out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && ref[i] == hyp[j] && cost(i + 1, j + 1) == cost(i, j)) {
      out.steps.push_back({EditOp::Match, i, j});
      ++i, ++j;
    } else if (i < n && j < m && !(ref[i] == hyp[j]) && cost(i + 1, j + 1) + 1 == cost(i, j)) {
      out.steps.push_back({EditOp::Substitute, i, j});
      ++out.substitutions;
      ++i, ++j;
    } else if (i < n && cost(i + 1, j) + 1 == cost(i, j)) {
      out.steps.push_back({EditOp::Delete, i, kNoIndex});
      ++out.deletions;
      ++i;
    } else {
      out.steps.push_back({EditOp::Insert, kNoIndex, j});
      ++out.insertions;
      ++j;
    }
  }
  return out;
}

inline Alignment word_align(const std::vector<std::string>& ref,
                            const std::vector<std::string>& hyp) {
  return align_sequences<std::string>(ref, hyp);
}

struct EvalResult {
  double wer = 0.0;
  double cer = 0.0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_tokens = 0;
  std::size_t char_errors = 0;
  std::size_t ref_chars = 0;
  // When the reference is empty the ratio is undefined; the error count
  // is reported instead and this flag is raised.
  bool zero_ref_flagged = false;
  std::optional<double> cer_grapheme;
  std::size_t grapheme_errors = 0;
  std::size_t ref_graphemes = 0;
};

struct ScoreConfig {
  NormalizationConfig norm;
  // Bangla conjuncts span several codepoints; the grapheme-cluster CER is
  // reported alongside the codepoint CER when enabled.
  bool grapheme_cer = false;
};

namespace detail {

inline double safe_rate(std::size_t errors, std::size_t ref, bool& flagged) {
  if (ref == 0) {
    flagged = flagged || errors > 0;
    return static_cast<double>(errors);
  }
  return static_cast<double>(errors) / static_cast<double>(ref);
}

inline std::vector<std::u32string> split_clusters(const std::u32string& cps) {
  std::vector<std::u32string> clusters;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::u32string cluster(1, cps[i]);
    char32_t prev = cps[i];
    ++i;
    while (i < cps.size()) {
      char32_t cp = cps[i];
      if (is_grapheme_extender(cp) ||
          (combining_class(prev) == 9 && !is_whitespace(cp) && !is_punctuation(cp))) {
        cluster.push_back(cp);
        prev = cp;
        ++i;
      } else {
        break;
      }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

}  // namespace detail

// Single-pair scoring: normalize -> tokenize -> GLM-canonicalize both
// sides -> align. WER = (S+D+I)/|ref|; CER is computed over the NFC
// codepoints of the space-joined canonicalized strings (spaces count as
// characters), after GLM folding.
inline EvalResult score(const std::string& ref_text, const std::string& hyp_text,
                        const GlmTable& glm = {}, const ScoreConfig& cfg = {}) {
  auto ref_tokens = canonicalize(split_tokens(normalize(ref_text, cfg.norm)), glm);
  auto hyp_tokens = canonicalize(split_tokens(normalize(hyp_text, cfg.norm)), glm);

  Alignment word_alignment = word_align(ref_tokens, hyp_tokens);

  EvalResult r;
  r.substitutions = word_alignment.substitutions;
  r.deletions = word_alignment.deletions;
  r.insertions = word_alignment.insertions;
  r.ref_tokens = ref_tokens.size();
  r.wer = detail::safe_rate(word_alignment.cost(), r.ref_tokens, r.zero_ref_flagged);

  auto join = [](const std::vector<std::string>& tokens) {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) s.push_back(' ');
      s += tokens[i];
    }
    return s;
  };
  std::u32string ref_chars = decode_utf8(join(ref_tokens));
  std::u32string hyp_chars = decode_utf8(join(hyp_tokens));
  Alignment char_alignment = align_sequences<char32_t>(
      std::span<const char32_t>(ref_chars.data(), ref_chars.size()),
      std::span<const char32_t>(hyp_chars.data(), hyp_chars.size()));
  r.char_errors = char_alignment.cost();
  r.ref_chars = ref_chars.size();
  r.cer = detail::safe_rate(r.char_errors, r.ref_chars, r.zero_ref_flagged);

  if (cfg.grapheme_cer) {
    auto ref_keys = detail::cluster_keys(ref_chars);
    auto hyp_keys = detail::cluster_keys(hyp_chars);
    Alignment cluster_alignment = align_sequences<char32_t>(
        std::span<const char32_t>(ref_keys.data(), ref_keys.size()),
        std::span<const char32_t>(hyp_keys.data(), hyp_keys.size()));
    r.grapheme_errors = cluster_alignment.cost();
    r.ref_graphemes = ref_keys.size();
    bool flagged = r.zero_ref_flagged;
    r.cer_grapheme = detail::safe_rate(r.grapheme_errors, r.ref_graphemes, flagged);
    r.zero_ref_flagged = flagged;
  }
  return r;
}

struct ScorePair {
  std::string id;
  std::string category;
  std::string ref_text;
  std::string hyp_text;
};

struct BatchResult {
  EvalResult aggregate;
  std::map<std::string, EvalResult> per_category;
  std::vector<std::pair<std::string, EvalResult>> per_pair;  // in input order
};

namespace detail {

inline void pool_into(EvalResult& acc, const EvalResult& r) {
  acc.substitutions += r.substitutions;
  acc.deletions += r.deletions;
  acc.insertions += r.insertions;
  acc.ref_tokens += r.ref_tokens;
  acc.char_errors += r.char_errors;
  acc.ref_chars += r.ref_chars;
  acc.grapheme_errors += r.grapheme_errors;
  acc.ref_graphemes += r.ref_graphemes;
  if (r.cer_grapheme) acc.cer_grapheme = 0.0;  // mark presence; rate set in finish_pool
}

inline void finish_pool(EvalResult& acc) {
  acc.zero_ref_flagged = false;
  acc.wer = safe_rate(acc.substitutions + acc.deletions + acc.insertions, acc.ref_tokens,
                      acc.zero_ref_flagged);
  acc.cer = safe_rate(acc.char_errors, acc.ref_chars, acc.zero_ref_flagged);
  if (acc.cer_grapheme) {
    bool flagged = acc.zero_ref_flagged;
    acc.cer_grapheme = safe_rate(acc.grapheme_errors, acc.ref_graphemes, flagged);
    acc.zero_ref_flagged = flagged;
  }
}

}  // namespace detail

// Corpus-level scoring: pooled totals overall and per category. Categories
// with no pairs simply do not appear.
inline BatchResult batch_score(const std::vector<ScorePair>& pairs, const GlmTable& glm = {},
                               const ScoreConfig& cfg = {}) {
  BatchResult batch;
  for (const auto& pair : pairs) {
    EvalResult r = score(pair.ref_text, pair.hyp_text, glm, cfg);
    detail::pool_into(batch.aggregate, r);
    detail::pool_into(batch.per_category[pair.category], r);
    batch.per_pair.emplace_back(pair.id, std::move(r));
  }
  detail::finish_pool(batch.aggregate);
  for (auto& [category, result] : batch.per_category) detail::finish_pool(result);
  return batch;
}

// ---------------------------------------------------------------------------
// Reports

inline constexpr const char* kPoolingId = "pooled-errors/pooled-ref-tokens";

inline std::string format_alignment(const std::vector<std::string>& ref,
                                    const std::vector<std::string>& hyp, const Alignment& a) {
  auto display_width = [](const std::string& s) { return codepoint_count(s); };
  std::string ref_row, hyp_row, op_row;
  for (const auto& step : a.steps) {
    std::string r = step.ref_index != kNoIndex ? ref[step.ref_index] : "*";
    std::string h = step.hyp_index != kNoIndex ? hyp[step.hyp_index] : "*";
    const char* op = step.op == EditOp::Match        ? " "
                     : step.op == EditOp::Substitute ? "S"
                     : step.op == EditOp::Delete     ? "D"
                                                     : "I";
    std::size_t width = std::max(display_width(r), display_width(h));
    auto pad = [&](std::string& row, const std::string& cell, std::size_t cell_width) {
      row += cell;
      row.append(width - cell_width, ' ');
      row.push_back(' ');
    };
    pad(ref_row, r, display_width(r));
    pad(hyp_row, h, display_width(h));
    pad(op_row, op, 1);
  }
  return "REF: " + ref_row + "\nHYP: " + hyp_row + "\nOP:  " + op_row + "\n";
}

namespace detail {

inline std::string percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", rate * 100.0);
  return buf;
}

inline nlohmann::ordered_json result_to_json(const EvalResult& r) {
  nlohmann::ordered_json doc;
  doc["wer"] = r.wer;
  doc["cer"] = r.cer;
  doc["substitutions"] = r.substitutions;
  doc["deletions"] = r.deletions;
  doc["insertions"] = r.insertions;
  doc["ref_tokens"] = r.ref_tokens;
  doc["char_errors"] = r.char_errors;
  doc["ref_chars"] = r.ref_chars;
  if (r.zero_ref_flagged) doc["zero_ref_flagged"] = true;
  if (r.cer_grapheme) {
    doc["cer_grapheme"] = *r.cer_grapheme;
    doc["grapheme_errors"] = r.grapheme_errors;
    doc["ref_graphemes"] = r.ref_graphemes;
  }
  return doc;
}

}  // namespace detail

inline nlohmann::ordered_json score_report_json(const BatchResult& batch) {
  nlohmann::ordered_json doc;
  doc["pooling"] = kPoolingId;
  doc["cer_basis"] = "codepoints-after-glm";
  doc["aggregate"] = detail::result_to_json(batch.aggregate);
  auto& categories = doc["categories"] = nlohmann::ordered_json::object();
  for (const auto& [category, result] : batch.per_category)
    categories[category] = detail::result_to_json(result);
  doc["pairs_scored"] = batch.per_pair.size();
  return doc;
}

inline std::string score_report_text(const BatchResult& batch) {
  std::ostringstream out;
  out << "WER/CER report (pooling: " << kPoolingId << "; CER over codepoints after GLM)\n";
  auto row = [&](const std::string& name, const EvalResult& r) {
    out << "  " << name << ": WER " << detail::percent(r.wer) << "% CER "
        << detail::percent(r.cer) << "%";
    if (r.cer_grapheme) out << " CER(grapheme) " << detail::percent(*r.cer_grapheme) << "%";
    out << "  [S=" << r.substitutions << " D=" << r.deletions << " I=" << r.insertions
        << " N=" << r.ref_tokens << "]";
    if (r.zero_ref_flagged) out << " (zero-length reference: counts reported, not ratios)";
    out << "\n";
  };
  row("ALL", batch.aggregate);
  for (const auto& [category, result] : batch.per_category) row(category, result);
  return out.str();
}

}  // namespace plabel
