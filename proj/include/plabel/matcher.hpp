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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plabel/transcript.hpp"

// Word-exact agreement between two hypothesis transcripts, computed as a
// recursive longest-common-substring decomposition: find the longest
// common contiguous word run (ties broken by leftmost position in t1,
// then in t2), emit it, and recurse independently on the left and right
// remainders. The result is a deterministic, non-crossing set of matched
// segments covering everything both experts agree on verbatim.

namespace plabel {

struct TokenSpan {
  std::size_t begin = 0;  // half-open [begin, end)
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const TokenSpan&) const = default;
};

struct MatchedSegment {
  std::vector<std::string> words;
  TokenSpan span1;  // token indices into t1
  TokenSpan span2;  // token indices into t2
  double start_s = 0.0;
  double end_s = 0.0;
};

struct MatchSet {
  std::string audio_id;
  std::vector<MatchedSegment> segments;
};

// The audio interval a matched segment covers. Neither expert's clock is
// authoritative, so take the union: earliest start and latest end over
// both experts' matched tokens. The cut audio then contains every matched
// word according to both experts.
inline std::pair<double, double> segment_timespan(const MatchedSegment& m,
                                                  const HypothesisTranscript& t1,
                                                  const HypothesisTranscript& t2) {
  double start = std::min(t1.words[m.span1.begin].start_s, t2.words[m.span2.begin].start_s);
  double end = std::max(t1.words[m.span1.end - 1].end_s, t2.words[m.span2.end - 1].end_s);
  return {start, end};
}

namespace detail {

struct RunCandidate {
  std::size_t len = 0;
  std::size_t start1 = 0;
  std::size_t start2 = 0;

  bool better_than(const RunCandidate& other) const {
    if (len != other.len) return len > other.len;
    if (start1 != other.start1) return start1 < other.start1;
    return start2 < other.start2;
  }
};

// Longest common word run inside the windows [lo1,hi1) x [lo2,hi2),
// quadratic DP over common-suffix lengths. Among equally long runs the
// leftmost start in t1 wins, then the leftmost start in t2.
inline RunCandidate longest_common_run(const std::vector<WordToken>& w1,
                                       const std::vector<WordToken>& w2, std::size_t lo1,
                                       std::size_t hi1, std::size_t lo2, std::size_t hi2) {
  RunCandidate best;
  const std::size_t n2 = hi2 - lo2;
  std::vector<std::size_t> prev(n2 + 1, 0), cur(n2 + 1, 0);
  for (std::size_t i = lo1; i < hi1; ++i) {
    for (std::size_t j = lo2; j < hi2; ++j) {
      if (w1[i].text == w2[j].text) {
        std::size_t len = prev[j - lo2] + 1;
        cur[j - lo2 + 1] = len;
        RunCandidate cand{len, i + 1 - len, j + 1 - len};
        if (cand.better_than(best)) best = cand;
      } else {
        cur[j - lo2 + 1] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

inline void match_recurse(const std::vector<WordToken>& w1, const std::vector<WordToken>& w2,
                          std::size_t lo1, std::size_t hi1, std::size_t lo2, std::size_t hi2,
                          std::vector<std::pair<TokenSpan, TokenSpan>>& out) {
  if (lo1 >= hi1 || lo2 >= hi2) return;
  RunCandidate run = longest_common_run(w1, w2, lo1, hi1, lo2, hi2);
  if (run.len == 0) return;
  match_recurse(w1, w2, lo1, run.start1, lo2, run.start2, out);
  out.push_back({{run.start1, run.start1 + run.len}, {run.start2, run.start2 + run.len}});
  match_recurse(w1, w2, run.start1 + run.len, hi1, run.start2 + run.len, hi2, out);
}

}  // namespace detail

inline MatchSet longest_match_set(const HypothesisTranscript& t1, const HypothesisTranscript& t2) {
  MatchSet result;
  result.audio_id = t1.audio_id;
  std::vector<std::pair<TokenSpan, TokenSpan>> spans;
  detail::match_recurse(t1.words, t2.words, 0, t1.words.size(), 0, t2.words.size(), spans);
  result.segments.reserve(spans.size());
  for (const auto& [s1, s2] : spans) {
    MatchedSegment seg;
    seg.span1 = s1;
    seg.span2 = s2;
    seg.words.reserve(s1.size());
    for (std::size_t i = s1.begin; i < s1.end; ++i) seg.words.push_back(t1.words[i].text);
    auto [start, end] = segment_timespan(seg, t1, t2);
    seg.start_s = start;
    seg.end_s = end;
    result.segments.push_back(std::move(seg));
  }
  return result;
}

// Debug dump for inspection; not part of the pipeline data path.
inline nlohmann::ordered_json match_set_to_json(const MatchSet& m) {
  nlohmann::ordered_json doc;
  doc["audio_id"] = m.audio_id;
  auto& segments = doc["segments"] = nlohmann::ordered_json::array();
  for (const auto& seg : m.segments) {
    nlohmann::ordered_json js;
    js["words"] = seg.words;
    js["span1"] = {seg.span1.begin, seg.span1.end};
    js["span2"] = {seg.span2.begin, seg.span2.end};
    js["start"] = seg.start_s;
    js["end"] = seg.end_s;
    segments.push_back(std::move(js));
  }
  return doc;
}

}  // namespace plabel
