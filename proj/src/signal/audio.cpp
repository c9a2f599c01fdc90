// Copyright 2026 The anonlab Authors.
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

#include "anonlab/signal/audio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "anonlab/error.hpp"

namespace anonlab::signal {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(at));
}

Error unsupported(const std::string& why) {
  return Error(ErrorCode::UnsupportedFormat, why);
}

}  // namespace

Waveform decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw unsupported("not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min<std::size_t>(size, bytes.size() - body);
    if (tag_is(bytes, pos, "fmt ")) {
      if (available < 16) throw unsupported("truncated fmt chunk");
      std::uint16_t format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      if (format == kFormatExtensible && available >= 26) format = read_u16(bytes, body + 24);
      if (format != kFormatPcm) throw unsupported("only integer PCM is supported");
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      data = bytes.subspan(body, available);
      have_data = true;
    }
    pos = body + size + (size & 1U);
  }

  if (!have_fmt || !have_data) throw unsupported("missing fmt or data chunk");
  if (bits != 16) throw unsupported("only 16-bit PCM is supported, got " + std::to_string(bits) + "-bit");
  if (channels != 1 && channels != 2) throw unsupported("only mono or stereo is supported");
  if (rate == 0) throw unsupported("sample rate is zero");

  const std::size_t frame_bytes = 2U * channels;
  const std::size_t count = data.size() / frame_bytes;
  if (count == 0) throw Error(ErrorCode::EmptyAudio, "WAV file holds no samples");

  Waveform out;
  out.sample_rate = static_cast<int>(rate);
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const auto raw = static_cast<std::int16_t>(read_u16(data, i * frame_bytes + 2 * c));
      acc += raw / 32768.0;
    }
    out.samples[i] = acc / channels;
  }
  return out;
}

Waveform load_audio(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const Waveform& waveform) {
  const auto n = waveform.samples.size();
  const auto data_bytes = static_cast<std::uint32_t>(n * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(waveform.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(waveform.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : waveform.samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::IoFailure, "cannot encode non-finite sample");
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    const auto q = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

void save_audio(const Waveform& waveform, const std::filesystem::path& path) {
  const auto bytes = encode_wav(waveform);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace anonlab::signal
