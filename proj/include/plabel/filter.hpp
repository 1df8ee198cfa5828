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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plabel/errors.hpp"
#include "plabel/matcher.hpp"
#include "plabel/unicode.hpp"

// Threshold filtering of matched segments. A segment survives only if
// its seconds-per-word rate, duration, character count, word count, and
// (optionally) minimum token confidence are all inside the configured
// bounds. Comparisons are strict: values exactly at a bound pass.

namespace plabel {

struct SegmentMetrics {
  double seconds_per_word = 0.0;  // duration / word count
  double duration_s = 0.0;
  std::size_t char_count = 0;  // codepoints, spaces excluded
  std::size_t word_count = 0;
  double min_confidence = 1.0;  // over both experts' matched tokens
};

struct FilterThresholds {
  // duration bounds follow the training configuration of the conformer
  // expert (0.2 s .. 18.5 s); the remaining defaults are project choices
  // and should be tuned per corpus.
  double seconds_per_word_min = 0.12;
  double seconds_per_word_max = 1.5;
  double duration_min_s = 0.2;
  double duration_max_s = 18.5;
  std::size_t min_chars = 3;
  std::size_t min_words = 2;
  std::optional<double> min_confidence;  // disabled when absent
};

enum class DropReason {
  WordRateLow,
  WordRateHigh,
  TooShort,
  TooLong,
  TooFewChars,
  TooFewWords,
  LowConfidence,
};

inline const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::WordRateLow: return "WordRateLow";
    case DropReason::WordRateHigh: return "WordRateHigh";
    case DropReason::TooShort: return "TooShort";
    case DropReason::TooLong: return "TooLong";
    case DropReason::TooFewChars: return "TooFewChars";
    case DropReason::TooFewWords: return "TooFewWords";
    case DropReason::LowConfidence: return "LowConfidence";
  }
  return "?";
}

inline constexpr DropReason kAllDropReasons[] = {
    DropReason::WordRateLow,  DropReason::WordRateHigh, DropReason::TooShort,
    DropReason::TooLong,      DropReason::TooFewChars,  DropReason::TooFewWords,
    DropReason::LowConfidence,
};

struct FilterDecision {
  bool kept = false;
  std::vector<DropReason> reasons;  // kept <=> reasons empty
};

inline SegmentMetrics compute_metrics(const MatchedSegment& m, std::pair<double, double> span,
                                      const HypothesisTranscript& t1,
                                      const HypothesisTranscript& t2) {
  SegmentMetrics metrics;
  metrics.duration_s = span.second - span.first;
  metrics.word_count = m.words.size();
  for (const auto& w : m.words) metrics.char_count += codepoint_count(w);
  metrics.seconds_per_word = metrics.duration_s / static_cast<double>(metrics.word_count);
  metrics.min_confidence = 1.0;
  for (std::size_t i = m.span1.begin; i < m.span1.end; ++i)
    metrics.min_confidence = std::min(metrics.min_confidence, t1.words[i].confidence);
  for (std::size_t i = m.span2.begin; i < m.span2.end; ++i)
    metrics.min_confidence = std::min(metrics.min_confidence, t2.words[i].confidence);
  return metrics;
}

// All failing criteria are reported, not just the first; drop-reason
// histograms need the complete picture.
inline FilterDecision apply_filter(const SegmentMetrics& m, const FilterThresholds& th) {
  FilterDecision d;
  if (m.seconds_per_word < th.seconds_per_word_min) d.reasons.push_back(DropReason::WordRateLow);
  if (m.seconds_per_word > th.seconds_per_word_max) d.reasons.push_back(DropReason::WordRateHigh);
  if (m.duration_s < th.duration_min_s) d.reasons.push_back(DropReason::TooShort);
  if (m.duration_s > th.duration_max_s) d.reasons.push_back(DropReason::TooLong);
  if (m.char_count < th.min_chars) d.reasons.push_back(DropReason::TooFewChars);
  if (m.word_count < th.min_words) d.reasons.push_back(DropReason::TooFewWords);
  if (th.min_confidence && m.min_confidence < *th.min_confidence)
    d.reasons.push_back(DropReason::LowConfidence);
  d.kept = d.reasons.empty();
  return d;
}

inline void validate_thresholds(const FilterThresholds& th) {
  auto fail = [](const std::string& what) { throw ParseError("thresholds: " + what); };
  if (th.seconds_per_word_min < 0 || th.duration_min_s < 0) fail("bounds must be non-negative");
  if (th.seconds_per_word_min > th.seconds_per_word_max) fail("r_w_min exceeds r_w_max");
  if (th.duration_min_s > th.duration_max_s) fail("d_a_min exceeds d_a_max");
  if (th.min_confidence && (*th.min_confidence < 0.0 || *th.min_confidence > 1.0))
    fail("conf_threshold out of [0,1]");
}

// key=value config, one per line, '#' comments. Unknown keys are errors
// so typos do not silently fall back to defaults.
inline FilterThresholds parse_thresholds(std::istream& in) {
  FilterThresholds th;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "r_w_min") th.seconds_per_word_min = std::stod(value);
      else if (key == "r_w_max") th.seconds_per_word_max = std::stod(value);
      else if (key == "d_a_min") th.duration_min_s = std::stod(value);
      else if (key == "d_a_max") th.duration_max_s = std::stod(value);
      else if (key == "c_t_min") th.min_chars = static_cast<std::size_t>(std::stoul(value));
      else if (key == "w_t_min") th.min_words = static_cast<std::size_t>(std::stoul(value));
      else if (key == "conf_threshold") th.min_confidence = std::stod(value);
      else throw ParseError("unknown threshold key \"" + key + "\"", line_no);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad number for " + key + ": \"" + value + "\"", line_no);
    }
  }
  validate_thresholds(th);
  return th;
}

inline nlohmann::ordered_json thresholds_to_json(const FilterThresholds& th) {
  nlohmann::ordered_json doc;
  doc["r_w_min"] = th.seconds_per_word_min;
  doc["r_w_max"] = th.seconds_per_word_max;
  doc["d_a_min"] = th.duration_min_s;
  doc["d_a_max"] = th.duration_max_s;
  doc["c_t_min"] = th.min_chars;
  doc["w_t_min"] = th.min_words;
  if (th.min_confidence) {
    doc["conf_threshold"] = *th.min_confidence;
  } else {
    doc["conf_threshold"] = nullptr;
  }
  return doc;
}

}  // namespace plabel
