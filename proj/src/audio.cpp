/*
 * Copyright 2026 The pausegate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pausegate/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "pausegate/error.hpp"

namespace pausegate {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

[[noreturn]] void unsupported(const std::filesystem::path& path, const std::string& why) {
  throw Error(ErrorCode::kUnsupportedFormat, path.string() + ": " + why);
}

struct FmtChunk {
  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

AudioSignal::AudioSignal(std::vector<double> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ < kMinSampleRateHz) {
    throw Error(ErrorCode::kSampleRateTooLow,
                "sample rate " + std::to_string(sample_rate_hz_) + " Hz is below " +
                    std::to_string(kMinSampleRateHz) + " Hz");
  }
  if (samples_.empty()) throw Error(ErrorCode::kEmptyAudio, "audio has no samples");
  for (double s : samples_) {
    if (!(s >= -1.0 && s <= 1.0)) {
      throw Error(ErrorCode::kInvalidRange, "sample outside [-1, 1]");
    }
  }
}

AudioSignal AudioSignal::scaled(double gain) const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [gain](double s) { return s * gain; });
  return AudioSignal(std::move(out), sample_rate_hz_);
}

std::size_t time_to_index(double t_s, int sample_rate_hz) {
  double idx = std::floor(t_s * sample_rate_hz + 1e-9);
  return idx <= 0.0 ? 0 : static_cast<std::size_t>(idx);
}

AudioSignal slice(const AudioSignal& signal, double start_s, double end_s) {
  constexpr double kEps = 1e-12;
  if (!(start_s >= 0.0) || !(start_s < end_s) || end_s > signal.duration_s() + kEps) {
    std::ostringstream msg;
    msg << "invalid slice range [" << start_s << ", " << end_s << ") for a "
        << signal.duration_s() << " s signal";
    throw Error(ErrorCode::kInvalidRange, msg.str());
  }
  std::size_t begin = time_to_index(start_s, signal.sample_rate_hz());
  std::size_t end = std::min(time_to_index(end_s, signal.sample_rate_hz()), signal.size());
  if (begin >= end) {
    throw Error(ErrorCode::kInvalidRange, "slice range maps to zero samples");
  }
  auto src = signal.samples();
  return AudioSignal(std::vector<double>(src.begin() + static_cast<std::ptrdiff_t>(begin),
                                         src.begin() + static_cast<std::ptrdiff_t>(end)),
                     signal.sample_rate_hz());
}

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kFileUnreadable, "read error on " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    unsupported(path, "not a RIFF/WAVE file");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_bytes = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* header = bytes.data() + pos;
    std::uint32_t chunk_size = read_u32(header + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;

    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (chunk_size < 16 || available < 16) unsupported(path, "truncated fmt chunk");
      const std::uint8_t* p = bytes.data() + body;
      fmt.format_tag = read_u16(p);
      fmt.channels = read_u16(p + 2);
      fmt.sample_rate = read_u32(p + 4);
      fmt.block_align = read_u16(p + 12);
      fmt.bits_per_sample = read_u16(p + 14);
      if (fmt.format_tag == kFormatExtensible) {
        // The sub-format GUID starts with the plain format tag.
        if (chunk_size < 40 || available < 40) unsupported(path, "truncated extensible fmt chunk");
        fmt.format_tag = read_u16(p + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(header, "data", 4) == 0) {
      data = bytes.data() + body;
      // Streaming writers sometimes leave the size unset; take what is there.
      data_bytes = std::min<std::size_t>(chunk_size, available);
      break;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }

  if (!have_fmt) unsupported(path, "missing fmt chunk");
  if (data == nullptr) unsupported(path, "missing data chunk");
  if (fmt.format_tag != kFormatPcm) {
    unsupported(path, "format tag " + std::to_string(fmt.format_tag) + " is not PCM");
  }
  if (fmt.bits_per_sample != 16) {
    unsupported(path, std::to_string(fmt.bits_per_sample) + "-bit samples (only 16-bit supported)");
  }
  if (fmt.channels < 1 || fmt.channels > 2) {
    unsupported(path, std::to_string(fmt.channels) + " channels (only mono or stereo supported)");
  }
  if (fmt.sample_rate < static_cast<std::uint32_t>(kMinSampleRateHz)) {
    throw Error(ErrorCode::kSampleRateTooLow,
                path.string() + ": sample rate " + std::to_string(fmt.sample_rate) + " Hz");
  }

  const std::size_t frame_bytes = 2u * fmt.channels;
  const std::size_t frames = data_bytes / frame_bytes;
  if (frames == 0) throw Error(ErrorCode::kEmptyAudio, path.string() + ": no audio frames");

  std::vector<double> samples(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* f = data + i * frame_bytes;
    auto left = static_cast<std::int16_t>(read_u16(f));
    if (fmt.channels == 1) {
      samples[i] = left / 32768.0;
    } else {
      auto right = static_cast<std::int16_t>(read_u16(f + 2));
      samples[i] = (left / 32768.0 + right / 32768.0) / 2.0;
    }
  }
  return AudioSignal(std::move(samples), static_cast<int>(fmt.sample_rate));
}

void write_wav(const AudioSignal& signal, const std::filesystem::path& path) {
  const auto n = static_cast<std::uint32_t>(signal.size());
  const std::uint32_t data_bytes = n * 2u;
  const auto rate = static_cast<std::uint32_t>(signal.sample_rate_hz());

  std::string out;
  out.reserve(44 + data_bytes);
  out.append("RIFF");
  put_u32(out, 36u + data_bytes);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2u);
  put_u16(out, 2);
  put_u16(out, 16);
  out.append("data");
  put_u32(out, data_bytes);
  for (double s : signal.samples()) {
    double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kWriteFailure, "cannot open " + path.string() + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.flush();
  if (!f) throw Error(ErrorCode::kWriteFailure, "write failed on " + path.string());
}

}  // namespace pausegate
