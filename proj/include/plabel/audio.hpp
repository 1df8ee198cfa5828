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

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "plabel/errors.hpp"

// Mono PCM16 WAV handling: strict RIFF reader/writer for 8 kHz and
// 16 kHz files, sample-exact segment cutting, and 2x linear-interpolation
// upsampling for telephony audio.

namespace plabel {

struct AudioBuffer {
  std::vector<std::int16_t> samples;
  int sample_rate = 16000;  // 8000 or 16000, mono

  double duration_s() const {
    return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
  }
};

class WavError : public PipelineError {
 public:
  enum class Kind { Io, NotRiff, UnsupportedCodec, UnsupportedChannels, UnsupportedRate, Truncated };

  WavError(Kind kind, const std::string& what) : PipelineError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline void put_u16le(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace detail

inline AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError(WavError::Kind::Io, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();

  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    throw WavError(WavError::Kind::NotRiff, path.string() + ": not a RIFF/WAVE file");

  AudioBuffer buf;
  bool have_fmt = false, have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= n) {
    const char* chunk_id = reinterpret_cast<const char*>(p + pos);
    std::uint32_t chunk_size = detail::read_u32le(p + pos + 4);
    std::size_t body = pos + 8;
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (body + 16 > n)
        throw WavError(WavError::Kind::Truncated, path.string() + ": truncated fmt chunk");
      std::uint16_t format = detail::read_u16le(p + body);
      std::uint16_t channels = detail::read_u16le(p + body + 2);
      std::uint32_t rate = detail::read_u32le(p + body + 4);
      std::uint16_t bits = detail::read_u16le(p + body + 14);
      if (format != 1 || bits != 16)
        throw WavError(WavError::Kind::UnsupportedCodec,
                       path.string() + ": only PCM16 is supported");
      if (channels != 1)
        throw WavError(WavError::Kind::UnsupportedChannels,
                       path.string() + ": only mono is supported, got " + std::to_string(channels) +
                           " channels");
      if (rate != 8000 && rate != 16000)
        throw WavError(WavError::Kind::UnsupportedRate,
                       path.string() + ": unsupported sample rate " + std::to_string(rate));
      buf.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      if (!have_fmt)
        throw WavError(WavError::Kind::NotRiff, path.string() + ": data chunk before fmt chunk");
      if (body + chunk_size > n)
        throw WavError(WavError::Kind::Truncated, path.string() + ": truncated data chunk");
      std::size_t count = chunk_size / 2;
      buf.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        std::uint16_t u = detail::read_u16le(p + body + 2 * i);
        buf.samples[i] = static_cast<std::int16_t>(u);
      }
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }
  if (!have_fmt || !have_data)
    throw WavError(WavError::Kind::Truncated, path.string() + ": missing fmt or data chunk");
  return buf;
}

// Canonical 44-byte header followed by little-endian PCM16 samples.
inline void write_wav(const AudioBuffer& buf, const std::filesystem::path& path) {
  const std::uint32_t data_size = static_cast<std::uint32_t>(buf.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_size);
  out.append("RIFF");
  detail::put_u32le(out, 36 + data_size);
  out.append("WAVE");
  out.append("fmt ");
  detail::put_u32le(out, 16);
  detail::put_u16le(out, 1);  // PCM
  detail::put_u16le(out, 1);  // mono
  detail::put_u32le(out, static_cast<std::uint32_t>(buf.sample_rate));
  detail::put_u32le(out, static_cast<std::uint32_t>(buf.sample_rate) * 2);  // byte rate
  detail::put_u16le(out, 2);   // block align
  detail::put_u16le(out, 16);  // bits per sample
  out.append("data");
  detail::put_u32le(out, data_size);
  for (std::int16_t s : buf.samples) detail::put_u16le(out, static_cast<std::uint16_t>(s));

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw WavError(WavError::Kind::Io, "cannot create " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw WavError(WavError::Kind::Io, "short write to " + path.string());
}

// Seconds are mapped to the half-open sample interval
// [round(start*rate), round(end*rate)), rounding half away from zero, so
// adjacent cuts concatenate back to the source bit-exactly.
inline AudioBuffer cut(const AudioBuffer& buf, double start_s, double end_s) {
  if (!(start_s >= 0.0) || !(end_s > start_s))
    throw PipelineError("cut: invalid interval [" + std::to_string(start_s) + ", " +
                        std::to_string(end_s) + ")");
  auto first = static_cast<std::size_t>(std::llround(start_s * buf.sample_rate));
  auto last = static_cast<std::size_t>(std::llround(end_s * buf.sample_rate));
  if (last > buf.samples.size())
    throw PipelineError("cut: end " + std::to_string(end_s) + "s beyond buffer of " +
                        std::to_string(buf.duration_s()) + "s");
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.assign(buf.samples.begin() + static_cast<std::ptrdiff_t>(first),
                     buf.samples.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

// 2x upsampling by linear interpolation: even outputs copy the inputs,
// odd outputs are rounded midpoints, and the final odd sample repeats the
// last input. Exactly doubles the sample count.
inline AudioBuffer upsample_8k_to_16k(const AudioBuffer& buf) {
  if (buf.sample_rate != 8000)
    throw PipelineError("upsample_8k_to_16k: input must be 8000 Hz, got " +
                        std::to_string(buf.sample_rate));
  AudioBuffer out;
  out.sample_rate = 16000;
  const std::size_t n = buf.samples.size();
  out.samples.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[2 * i] = buf.samples[i];
    if (i + 1 < n) {
      double mid = (static_cast<double>(buf.samples[i]) + buf.samples[i + 1]) / 2.0;
      out.samples[2 * i + 1] = static_cast<std::int16_t>(std::llround(mid));
    } else {
      out.samples[2 * i + 1] = buf.samples[i];
    }
  }
  return out;
}

}  // namespace plabel
