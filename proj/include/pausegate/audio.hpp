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

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace pausegate {

inline constexpr int kMinSampleRateHz = 8000;

// Mono signal with samples normalized into [-1, 1].
//
// The constructor enforces the invariants (non-empty, in range, rate at
// least kMinSampleRateHz) and throws pausegate::Error otherwise, so every
// AudioSignal in circulation is valid.
class AudioSignal {
 public:
  AudioSignal(std::vector<double> samples, int sample_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  int sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

  // Multiplies every sample by gain. Throws kInvalidRange if the result
  // would leave [-1, 1].
  AudioSignal scaled(double gain) const;

  friend bool operator==(const AudioSignal&, const AudioSignal&) = default;

 private:
  std::vector<double> samples_;
  int sample_rate_hz_;
};

// Sample index for time t: floor(t * rate), with a 1e-9 sample tolerance
// so that times computed as k / rate land on k.
std::size_t time_to_index(double t_s, int sample_rate_hz);

// Sub-signal covering [start_s, end_s).
AudioSignal slice(const AudioSignal& signal, double start_s, double end_s);

// Reads a RIFF/WAVE file holding 16-bit PCM with one or two channels.
// Stereo is averaged to mono sample by sample.
AudioSignal load_wav(const std::filesystem::path& path);

// Writes canonical 16-bit little-endian PCM mono.
void write_wav(const AudioSignal& signal, const std::filesystem::path& path);

}  // namespace pausegate
