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

#include "pausegate/pause_detection.hpp"

#include <algorithm>
#include <sstream>

#include "pausegate/error.hpp"

namespace pausegate {

namespace {

struct Run {
  bool speech = false;
  double start_s = 0.0;
  double end_s = 0.0;

  double duration_s() const { return end_s - start_s; }
};

void merge_adjacent(std::vector<Run>& runs) {
  std::vector<Run> merged;
  merged.reserve(runs.size());
  for (const Run& r : runs) {
    if (!merged.empty() && merged.back().speech == r.speech) {
      merged.back().end_s = r.end_s;
    } else {
      merged.push_back(r);
    }
  }
  runs = std::move(merged);
}

SegmentList smooth_runs(std::vector<Run> runs, double empty_at_s, const VadConfig& cfg) {
  merge_adjacent(runs);

  // Click rejection: speech bursts too short to be speech become silence.
  for (Run& r : runs) {
    if (r.speech && r.duration_s() < cfg.min_speech_s - kDurationEps) r.speech = false;
  }
  merge_adjacent(runs);

  // Hangover: gaps too short to be pauses are absorbed into the speech.
  for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
    if (!runs[i].speech && runs[i].duration_s() < cfg.min_pause_s - kDurationEps) {
      runs[i].speech = true;
    }
  }
  merge_adjacent(runs);

  // Leading and trailing silence is not a pause.
  if (!runs.empty() && !runs.front().speech) runs.erase(runs.begin());
  if (!runs.empty() && !runs.back().speech) runs.pop_back();

  SegmentList out;
  if (runs.empty()) {
    out.trimmed_start_s = out.trimmed_end_s = empty_at_s;
    return out;
  }
  out.segments.reserve(runs.size());
  for (const Run& r : runs) {
    out.segments.push_back(
        {r.speech ? SegmentKind::kSpeech : SegmentKind::kPause, r.start_s, r.end_s});
  }
  out.trimmed_start_s = out.segments.front().start_s;
  out.trimmed_end_s = out.segments.back().end_s;
  return out;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

NoiseFingerprint fingerprint_region(const AudioSignal& region, const VadConfig& cfg,
                                    const BandConfig& band, const WindowPlan& plan) {
  const std::size_t frames = frame_count(region.size(), plan);
  if (frames < kMinNoiseFrames) {
    throw Error(ErrorCode::kSignalTooShort,
                "noise region holds " + std::to_string(frames) + " whole frames, need at least " +
                    std::to_string(kMinNoiseFrames));
  }
  std::vector<double> energies;
  energies.reserve(frames);
  for (const FrameFeature& f : windowed_scan(region, plan, band)) {
    energies.push_back(f.band_energy);
  }
  return {std::max(median(std::move(energies)), cfg.absolute_floor), frames, band};
}

}  // namespace

void validate(const VadConfig& cfg) {
  if (!(cfg.energy_ratio_threshold > 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "energy ratio threshold must exceed 1");
  }
  if (!(cfg.min_speech_s > 0.0) || !(cfg.min_pause_s > 0.0) || !(cfg.noise_head_s > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "VAD durations must be positive");
  }
  if (!(cfg.absolute_floor >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "absolute floor must be non-negative");
  }
}

std::size_t SegmentList::pause_count() const {
  return static_cast<std::size_t>(std::count_if(
      segments.begin(), segments.end(), [](const Segment& s) { return s.kind == SegmentKind::kPause; }));
}

NoiseFingerprint fingerprint_noise(const AudioSignal& signal, const VadConfig& cfg,
                                   const BandConfig& band, const WindowPlan& plan) {
  validate(cfg);
  validate(plan);
  const std::size_t head = time_to_index(cfg.noise_head_s, signal.sample_rate_hz());
  if (signal.size() < head + plan.window_len_samples) {
    std::ostringstream msg;
    msg << "signal of " << signal.duration_s() << " s is shorter than the " << cfg.noise_head_s
        << " s noise head plus one window";
    throw Error(ErrorCode::kSignalTooShort, msg.str());
  }
  return fingerprint_region(slice(signal, 0.0, cfg.noise_head_s), cfg, band, plan);
}

NoiseFingerprint fingerprint_noise_segment(const AudioSignal& signal, double start_s,
                                           double end_s, const VadConfig& cfg,
                                           const BandConfig& band, const WindowPlan& plan) {
  validate(cfg);
  validate(plan);
  return fingerprint_region(slice(signal, start_s, end_s), cfg, band, plan);
}

std::vector<FrameLabel> classify_frames(std::span<const FrameFeature> features,
                                        const NoiseFingerprint& fp, const VadConfig& cfg) {
  if (features.empty()) throw Error(ErrorCode::kSignalTooShort, "no frames to classify");
  const double threshold = cfg.energy_ratio_threshold * fp.noise_floor_energy;
  std::vector<FrameLabel> labels;
  labels.reserve(features.size());
  for (const FrameFeature& f : features) labels.push_back({f.start_s, f.band_energy > threshold});
  return labels;
}

std::optional<std::string> check_invariants(const SegmentList& list, const VadConfig& cfg) {
  if (list.segments.empty()) {
    if (list.trimmed_start_s != list.trimmed_end_s) return "empty list with unequal trimmed bounds";
    return std::nullopt;
  }
  const auto& segs = list.segments;
  if (segs.front().start_s != list.trimmed_start_s) return "first segment does not start at trim";
  if (segs.back().end_s != list.trimmed_end_s) return "last segment does not end at trim";
  if (segs.front().kind != SegmentKind::kSpeech) return "first segment is not speech";
  if (segs.back().kind != SegmentKind::kSpeech) return "last segment is not speech";
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (!(s.end_s > s.start_s)) return "segment " + std::to_string(i) + " has no duration";
    if (i > 0) {
      if (segs[i - 1].end_s != s.start_s) return "gap or overlap before segment " + std::to_string(i);
      if (segs[i - 1].kind == s.kind) return "kinds do not alternate at segment " + std::to_string(i);
    }
    const double min_s = s.kind == SegmentKind::kSpeech ? cfg.min_speech_s : cfg.min_pause_s;
    if (s.duration_s() < min_s - kDurationEps) {
      return "segment " + std::to_string(i) + " is shorter than its minimum duration";
    }
  }
  return std::nullopt;
}

SegmentList segment(std::span<const FrameLabel> labels, double frame_hop_s, const VadConfig& cfg) {
  validate(cfg);
  if (labels.empty()) return {};
  if (!(frame_hop_s > 0.0)) throw Error(ErrorCode::kInvalidConfig, "frame hop must be positive");

  std::vector<Run> runs;
  runs.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    // Each run ends exactly where the next label starts so coverage is exact.
    const double end = i + 1 < labels.size() ? labels[i + 1].start_s : labels[i].start_s + frame_hop_s;
    runs.push_back({labels[i].is_speech, labels[i].start_s, end});
  }
  SegmentList out = smooth_runs(std::move(runs), labels.front().start_s, cfg);
  if (auto violation = check_invariants(out, cfg)) {
    throw std::logic_error("segment produced an invalid SegmentList: " + *violation);
  }
  return out;
}

SegmentList smooth(const SegmentList& list, const VadConfig& cfg) {
  validate(cfg);
  std::vector<Run> runs;
  runs.reserve(list.segments.size());
  for (const Segment& s : list.segments) {
    runs.push_back({s.kind == SegmentKind::kSpeech, s.start_s, s.end_s});
  }
  return smooth_runs(std::move(runs), list.trimmed_start_s, cfg);
}

SegmentList detect_pauses(const AudioSignal& signal, const VadConfig& cfg, const BandConfig& band,
                          const WindowPlan& plan, const DetectOptions& options) {
  validate(cfg);
  validate(plan);
  const NoiseFingerprint fp =
      options.noise_segment_s
          ? fingerprint_noise_segment(signal, options.noise_segment_s->first,
                                      options.noise_segment_s->second, cfg, band, plan)
          : fingerprint_noise(signal, cfg, band, plan);
  const std::vector<FrameFeature> features = windowed_scan(signal, plan, band);
  std::vector<FrameLabel> labels = classify_frames(features, fp, cfg);

  const double rate = signal.sample_rate_hz();
  const double anchor_s =
      static_cast<double>(plan.window_len_samples - plan.hop_len_samples) / (2.0 * rate);
  for (FrameLabel& l : labels) l.start_s += anchor_s;
  return segment(labels, static_cast<double>(plan.hop_len_samples) / rate, cfg);
}

}  // namespace pausegate
