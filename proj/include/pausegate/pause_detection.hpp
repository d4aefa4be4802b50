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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pausegate/audio.hpp"
#include "pausegate/spectral.hpp"

namespace pausegate {

struct VadConfig {
  double energy_ratio_threshold = 4.0;
  double min_speech_s = 0.10;
  double min_pause_s = 0.20;
  double noise_head_s = 0.30;
  double absolute_floor = 1e-10;

  friend bool operator==(const VadConfig&, const VadConfig&) = default;
};

// Throws kInvalidConfig unless durations are positive, the ratio exceeds 1
// and the floor is non-negative.
void validate(const VadConfig& cfg);

// Background intensity in the analysis band.
struct NoiseFingerprint {
  double noise_floor_energy = 0.0;
  std::size_t frames_used = 0;
  BandConfig band;
};

inline constexpr std::size_t kMinNoiseFrames = 3;

// Median band energy over the frames lying entirely inside the leading
// cfg.noise_head_s of the signal, floored at cfg.absolute_floor.
NoiseFingerprint fingerprint_noise(const AudioSignal& signal, const VadConfig& cfg,
                                   const BandConfig& band, const WindowPlan& plan);

// Same estimate taken over an explicit background segment [start_s, end_s)
// instead of the leading head.
NoiseFingerprint fingerprint_noise_segment(const AudioSignal& signal, double start_s,
                                           double end_s, const VadConfig& cfg,
                                           const BandConfig& band, const WindowPlan& plan);

struct FrameLabel {
  double start_s = 0.0;
  bool is_speech = false;
};

// A frame is speech when its band energy is strictly greater than
// energy_ratio_threshold times the noise floor.
std::vector<FrameLabel> classify_frames(std::span<const FrameFeature> features,
                                        const NoiseFingerprint& fp, const VadConfig& cfg);

enum class SegmentKind { kSpeech, kPause };

struct Segment {
  SegmentKind kind = SegmentKind::kSpeech;
  double start_s = 0.0;
  double end_s = 0.0;

  double duration_s() const { return end_s - start_s; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Alternating speech/pause intervals exactly covering
// [trimmed_start_s, trimmed_end_s]; first and last segments are speech.
struct SegmentList {
  std::vector<Segment> segments;
  double trimmed_start_s = 0.0;
  double trimmed_end_s = 0.0;

  bool empty() const { return segments.empty(); }
  std::size_t pause_count() const;
  friend bool operator==(const SegmentList&, const SegmentList&) = default;
};

// Tolerance used when comparing segment durations against the minima.
inline constexpr double kDurationEps = 1e-9;

// Describes the first violated SegmentList invariant, or nullopt if valid.
std::optional<std::string> check_invariants(const SegmentList& list, const VadConfig& cfg);

// Runs -> click rejection -> hangover -> trim. Each run of labels i..j spans
// [labels[i].start_s, labels[j].start_s + frame_hop_s).
SegmentList segment(std::span<const FrameLabel> labels, double frame_hop_s, const VadConfig& cfg);

// Re-applies click rejection, hangover and trimming to an existing list.
// A list that already satisfies the invariants comes back unchanged.
SegmentList smooth(const SegmentList& list, const VadConfig& cfg);

struct DetectOptions {
  // Overrides the leading-head fingerprint with an explicit background segment.
  std::optional<std::pair<double, double>> noise_segment_s;
};

// Full detector: scan, fingerprint, classify, segment. Frame labels are
// anchored on the hop-wide slot centred on each window before segmenting.
SegmentList detect_pauses(const AudioSignal& signal, const VadConfig& cfg,
                          const BandConfig& band, const WindowPlan& plan,
                          const DetectOptions& options = {});

}  // namespace pausegate
