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
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "plabel/errors.hpp"
#include "plabel/unicode.hpp"

// Word-level hypothesis transcripts as emitted by the two expert ASR
// systems. Input is JSON-Lines, one transcript per line:
//
//   {"audio_id": "...", "expert": "E1", "audio_duration": 12.3,
//    "words": [{"text": "...", "start": 0.1, "end": 0.5, "confidence": 0.9}, ...]}
//
// Word text is normalized to NFC at ingestion so downstream exact-string
// matching operates on canonical forms.

namespace plabel {

enum class Expert { E1, E2 };

inline const char* expert_name(Expert e) { return e == Expert::E1 ? "E1" : "E2"; }

struct WordToken {
  std::string text;  // NFC, no whitespace
  double start_s = 0.0;
  double end_s = 0.0;
  double confidence = 1.0;

  bool operator==(const WordToken&) const = default;
};

struct HypothesisTranscript {
  std::string audio_id;
  Expert expert = Expert::E1;
  double audio_duration_s = 0.0;
  std::vector<WordToken> words;

  bool operator==(const HypothesisTranscript&) const = default;
};

struct TranscriptPair {
  std::string audio_id;
  HypothesisTranscript t1;  // expert E1
  HypothesisTranscript t2;  // expert E2
};

struct PairingResult {
  std::vector<TranscriptPair> pairs;
  std::vector<HypothesisTranscript> unpaired_e1;
  std::vector<HypothesisTranscript> unpaired_e2;
};

namespace detail {

inline void validate_token(WordToken& token, const std::string& audio_id, std::size_t index) {
  auto fail = [&](const std::string& what) {
    throw ParseError("audio_id \"" + audio_id + "\" word " + std::to_string(index) + ": " + what);
  };
  if (token.text.empty()) fail("text must be non-empty");
  std::u32string cps = decode_utf8(token.text);
  for (char32_t cp : cps) {
    if (is_whitespace(cp)) fail("text must not contain whitespace");
  }
  token.text = encode_utf8(nfc(cps));
  if (token.start_s < 0.0) fail("start must be >= 0");
  if (!(token.end_s > token.start_s)) fail("end must exceed start");
  if (token.confidence < 0.0 || token.confidence > 1.0) fail("confidence out of range [0,1]");
}

inline void validate_transcript(HypothesisTranscript& t) {
  if (t.audio_id.empty()) throw ParseError("audio_id must be non-empty");
  if (!(t.audio_duration_s > 0.0))
    throw ParseError("audio_id \"" + t.audio_id + "\": audio_duration must be > 0");
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    validate_token(t.words[i], t.audio_id, i);
    if (i > 0 && !(t.words[i - 1].start_s < t.words[i].start_s))
      throw ParseError("audio_id \"" + t.audio_id + "\" word " + std::to_string(i) +
                       ": starts must be strictly increasing");
    if (t.words[i].end_s > t.audio_duration_s)
      throw ParseError("audio_id \"" + t.audio_id + "\" word " + std::to_string(i) +
                       ": end exceeds audio_duration");
  }
}

}  // namespace detail

inline HypothesisTranscript parse_hypothesis_line(const std::string& line, std::size_t line_no) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
  }
  HypothesisTranscript t;
  try {
    t.audio_id = doc.at("audio_id").get<std::string>();
    std::string expert = doc.at("expert").get<std::string>();
    if (expert == "E1") {
      t.expert = Expert::E1;
    } else if (expert == "E2") {
      t.expert = Expert::E2;
    } else {
      throw ParseError("expert must be \"E1\" or \"E2\", got \"" + expert + "\"", line_no);
    }
    t.audio_duration_s = doc.at("audio_duration").get<double>();
    for (const auto& w : doc.at("words")) {
      WordToken token;
      token.text = w.at("text").get<std::string>();
      token.start_s = w.at("start").get<double>();
      token.end_s = w.at("end").get<double>();
      token.confidence = w.at("confidence").get<double>();
      t.words.push_back(std::move(token));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad transcript object: ") + e.what(), line_no);
  }
  try {
    detail::validate_transcript(t);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }
  return t;
}

inline std::vector<HypothesisTranscript> parse_hypothesis_stream(std::istream& in) {
  std::vector<HypothesisTranscript> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    out.push_back(parse_hypothesis_line(line, line_no));
  }
  return out;
}

inline std::string serialize_transcript(const HypothesisTranscript& t) {
  nlohmann::ordered_json doc;
  doc["audio_id"] = t.audio_id;
  doc["expert"] = expert_name(t.expert);
  doc["audio_duration"] = t.audio_duration_s;
  auto& words = doc["words"] = nlohmann::ordered_json::array();
  for (const auto& w : t.words) {
    nlohmann::ordered_json jw;
    jw["text"] = w.text;
    jw["start"] = w.start_s;
    jw["end"] = w.end_s;
    jw["confidence"] = w.confidence;
    words.push_back(std::move(jw));
  }
  return doc.dump();
}

inline void write_hypothesis_stream(const std::vector<HypothesisTranscript>& ts, std::ostream& out) {
  for (const auto& t : ts) out << serialize_transcript(t) << '\n';
}

// Pairs transcripts by audio_id. Ids present in only one input are
// reported as unpaired diagnostics rather than dropped or treated as
// errors; duplicate ids within one input are errors.
inline PairingResult pair_transcripts(const std::vector<HypothesisTranscript>& seq1,
                                      const std::vector<HypothesisTranscript>& seq2) {
  auto index_of = [](const std::vector<HypothesisTranscript>& seq, Expert expected) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i].expert != expected)
        throw ParseError("audio_id \"" + seq[i].audio_id + "\": expected expert " +
                         expert_name(expected) + ", got " + expert_name(seq[i].expert));
      if (!index.emplace(seq[i].audio_id, i).second)
        throw ParseError("duplicate audio_id \"" + seq[i].audio_id + "\" in " +
                         expert_name(expected) + " input");
    }
    return index;
  };
  auto index1 = index_of(seq1, Expert::E1);
  auto index2 = index_of(seq2, Expert::E2);

  PairingResult result;
  std::unordered_set<std::string> paired;
  for (const auto& t1 : seq1) {
    auto it = index2.find(t1.audio_id);
    if (it == index2.end()) {
      result.unpaired_e1.push_back(t1);
    } else {
      result.pairs.push_back({t1.audio_id, t1, seq2[it->second]});
      paired.insert(t1.audio_id);
    }
  }
  for (const auto& t2 : seq2) {
    if (!paired.count(t2.audio_id)) result.unpaired_e2.push_back(t2);
  }
  return result;
}

}  // namespace plabel
