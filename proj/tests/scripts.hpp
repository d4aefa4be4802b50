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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "pausegate/synth.hpp"

namespace test_util {

inline constexpr double kGridS = 0.016;  // default hop at 16 kHz

enum class Snap { kNearest, kUp, kDown };

inline double on_grid(double seconds, Snap snap = Snap::kNearest) {
  const double k = seconds / kGridS;
  switch (snap) {
    case Snap::kUp: return std::ceil(k - 1e-9) * kGridS;
    case Snap::kDown: return std::floor(k + 1e-9) * kGridS;
    default: return std::round(k) * kGridS;
  }
}

// Tones separated by equal silences, all durations on the 16 ms hop grid.
// On that grid the default detector reports each pause exactly one hop
// shorter than scripted and the utterance one hop longer, so the gap length
// is solved from
//   pct = 100 * gaps * (gap - hop) / (tones * tone_s + gaps * gap + hop).
// snap picks which side of the target the grid-aligned gap lands on. Low
// targets (under about 7%) give gaps too short to count as pauses.
inline pausegate::synth::Script pause_pct_script(double target_pct, Snap snap = Snap::kNearest,
                                                 int tones = 3, double tone_s = 2.0,
                                                 double freq_hz = 150.0) {
  const double q = target_pct / 100.0;
  const int gaps = tones - 1;
  const double tone = on_grid(tone_s);
  const double gap =
      on_grid((gaps * kGridS + q * (tones * tone + kGridS)) / (gaps * (1.0 - q)), snap);
  pausegate::synth::Script s;
  s.events.push_back({pausegate::synth::Silence{}, 32 * kGridS});
  for (int i = 0; i < tones; ++i) {
    s.events.push_back({pausegate::synth::Tone{freq_hz, 0.7}, tone});
    s.events.push_back({pausegate::synth::Silence{}, i + 1 < tones ? gap : 32 * kGridS});
  }
  return s;
}

inline double expected_pause_pct(const pausegate::synth::Script& s) {
  double speech = 0.0, gaps = 0.0;
  int n_gaps = 0;
  for (std::size_t i = 1; i + 1 < s.events.size(); ++i) {
    if (s.events[i].is_tone()) {
      speech += s.events[i].duration_s;
    } else {
      gaps += s.events[i].duration_s - kGridS;
      ++n_gaps;
    }
  }
  return 100.0 * gaps / (speech + gaps + n_gaps * kGridS + kGridS);
}

inline std::string script_json(const pausegate::synth::Script& s) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : s.events) {
    if (const auto* t = std::get_if<pausegate::synth::Tone>(&e.kind)) {
      events.push_back({{"kind", "tone"}, {"freq_hz", t->freq_hz}, {"amplitude", t->amplitude},
                        {"duration_s", e.duration_s}});
    } else if (const auto* n = std::get_if<pausegate::synth::Noise>(&e.kind)) {
      events.push_back({{"kind", "noise"}, {"amplitude", n->amplitude}, {"duration_s", e.duration_s}});
    } else {
      events.push_back({{"kind", "silence"}, {"duration_s", e.duration_s}});
    }
  }
  return nlohmann::json{{"sample_rate_hz", s.sample_rate_hz}, {"seed", s.seed}, {"events", events}}
      .dump();
}

}  // namespace test_util
