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

#include "pausegate/metrics.hpp"

#include <cmath>

namespace pausegate {

double PauseMetrics::pause_count_per_min() const {
  return utterance_s > 0.0 ? static_cast<double>(pause_count) * 60.0 / utterance_s : 0.0;
}

PauseMetrics pause_metrics(const SegmentList& segments) {
  PauseMetrics m;
  if (segments.empty()) return m;
  for (const Segment& s : segments.segments) {
    if (s.kind == SegmentKind::kPause) {
      ++m.pause_count;
      m.pause_total_s += s.duration_s();
    } else {
      m.speech_total_s += s.duration_s();
    }
  }
  m.utterance_s = segments.trimmed_end_s - segments.trimmed_start_s;
  m.pause_pct = m.utterance_s > 0.0 ? 100.0 * m.pause_total_s / m.utterance_s : 0.0;
  m.mean_pause_s = m.pause_count > 0 ? m.pause_total_s / static_cast<double>(m.pause_count) : 0.0;
  return m;
}

std::vector<double> f0_track(const AudioSignal& signal, const SegmentList& segments,
                             const BandConfig& band, const WindowPlan& plan) {
  std::vector<double> track;
  if (segments.empty() || frame_count(signal.size(), plan) == 0) return track;

  const double rate = signal.sample_rate_hz();
  const double window_s = static_cast<double>(plan.window_len_samples) / rate;
  constexpr double kEps = 1e-9;

  // Frames and segments are both time-ordered, so one forward pass suffices.
  auto seg = segments.segments.begin();
  for (const FrameFeature& f : windowed_scan(signal, plan, band)) {
    while (seg != segments.segments.end() && seg->end_s <= f.start_s + kEps) ++seg;
    if (seg == segments.segments.end()) break;
    const bool inside = seg->kind == SegmentKind::kSpeech && seg->start_s <= f.start_s + kEps &&
                        f.start_s + window_s <= seg->end_s + kEps;
    if (inside && f.max_freq_hz) track.push_back(*f.max_freq_hz);
  }
  return track;
}

std::optional<F0Stats> f0_stats(std::span<const double> track) {
  if (track.empty()) return std::nullopt;
  const double n = static_cast<double>(track.size());
  double sum = 0.0;
  for (double f : track) sum += f;
  const double mean = sum / n;
  double sq = 0.0;
  for (double f : track) sq += (f - mean) * (f - mean);
  return F0Stats{mean, std::sqrt(sq / n), track.size()};
}

}  // namespace pausegate
