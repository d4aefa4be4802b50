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

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "pausegate/audio.hpp"
#include "pausegate/pause_detection.hpp"

namespace pausegate::synth {

struct Tone {
  double freq_hz = 150.0;
  double amplitude = 0.5;
};

struct Silence {};

// Uniform white noise in [-amplitude, amplitude].
struct Noise {
  double amplitude = 0.01;
};

struct Event {
  std::variant<Tone, Silence, Noise> kind;
  double duration_s = 0.0;

  bool is_tone() const { return std::holds_alternative<Tone>(kind); }
};

struct Script {
  int sample_rate_hz = 16000;
  std::vector<Event> events;
  std::uint64_t seed = 0;
};

// Throws kInvalidScript on non-positive durations, amplitudes outside
// (0, 1], tones not strictly between 0 and Nyquist, or an empty script.
void validate(const Script& script);

// Parses the JSON form:
//   {"sample_rate_hz": 16000, "seed": 7, "events": [
//      {"kind": "tone", "freq_hz": 150, "amplitude": 0.8, "duration_s": 1.0},
//      {"kind": "silence", "duration_s": 0.5},
//      {"kind": "noise", "amplitude": 0.01, "duration_s": 0.5}]}
// "seed" is optional (default 0). Throws kInvalidScript.
Script script_from_json(std::string_view text);

struct Rendered {
  AudioSignal signal;
  // Tones are speech, everything else background, with the detector's
  // min-duration smoothing and trimming applied to the exact event edges.
  SegmentList truth;
};

Rendered render(const Script& script, const VadConfig& cfg = {});

// Samples contributed by one event: round(duration * rate).
std::size_t event_samples(const Event& event, int sample_rate_hz);

}  // namespace pausegate::synth
