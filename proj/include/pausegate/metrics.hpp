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
#include <optional>
#include <span>
#include <vector>

#include "pausegate/audio.hpp"
#include "pausegate/pause_detection.hpp"
#include "pausegate/spectral.hpp"

namespace pausegate {

struct PauseMetrics {
  std::size_t pause_count = 0;
  double pause_total_s = 0.0;
  double speech_total_s = 0.0;
  double utterance_s = 0.0;  // trimmed span
  double pause_pct = 0.0;    // 100 * pause_total_s / utterance_s
  double mean_pause_s = 0.0;

  // pause_count * 60 / utterance_s, 0 for an empty utterance.
  double pause_count_per_min() const;

  friend bool operator==(const PauseMetrics&, const PauseMetrics&) = default;
};

PauseMetrics pause_metrics(const SegmentList& segments);

struct F0Stats {
  double mean_f0_hz = 0.0;
  double std_f0_hz = 0.0;  // population
  std::size_t voiced_frames = 0;

  friend bool operator==(const F0Stats&, const F0Stats&) = default;
};

// Dominant in-band frequency of every frame lying wholly inside a speech
// segment. Frames without a dominant peak are skipped.
std::vector<double> f0_track(const AudioSignal& signal, const SegmentList& segments,
                             const BandConfig& band, const WindowPlan& plan);

// nullopt for an empty track.
std::optional<F0Stats> f0_stats(std::span<const double> track);

}  // namespace pausegate
