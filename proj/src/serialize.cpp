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

#include "pausegate/serialize.hpp"

namespace pausegate {

using nlohmann::json;

void to_json(json& j, const BandConfig& band) {
  j = json{{"low_cutoff_hz", band.low_cutoff_hz}, {"high_cutoff_hz", band.high_cutoff_hz}};
}

void to_json(json& j, const WindowPlan& plan) {
  j = json{{"window_len_samples", plan.window_len_samples},
           {"hop_len_samples", plan.hop_len_samples},
           {"taper", plan.taper == Taper::kHann ? "hann" : "rectangular"}};
}

void to_json(json& j, const VadConfig& cfg) {
  j = json{{"energy_ratio_threshold", cfg.energy_ratio_threshold},
           {"min_speech_s", cfg.min_speech_s},
           {"min_pause_s", cfg.min_pause_s},
           {"noise_head_s", cfg.noise_head_s},
           {"absolute_floor", cfg.absolute_floor}};
}

void to_json(json& j, const DecisionConfig& cfg) {
  j = json{{"k_sigma", cfg.k_sigma},
           {"min_enrollments", cfg.min_enrollments},
           {"std_floor_pct", cfg.std_floor_pct},
           {"use_f0_variability", cfg.use_f0_variability},
           {"f0_std_floor_hz", cfg.f0_std_floor_hz}};
}

void to_json(json& j, const Segment& seg) {
  j = json{{"kind", seg.kind == SegmentKind::kSpeech ? "speech" : "pause"},
           {"start_s", seg.start_s},
           {"end_s", seg.end_s}};
}

void to_json(json& j, const SegmentList& list) {
  j = json{{"trimmed_start_s", list.trimmed_start_s},
           {"trimmed_end_s", list.trimmed_end_s},
           {"segments", list.segments}};
}

void to_json(json& j, const PauseMetrics& m) {
  j = json{{"pause_count", m.pause_count},     {"pause_total_s", m.pause_total_s},
           {"speech_total_s", m.speech_total_s}, {"utterance_s", m.utterance_s},
           {"pause_pct", m.pause_pct},         {"mean_pause_s", m.mean_pause_s}};
}

void to_json(json& j, const F0Stats& f0) {
  j = json{{"mean_hz", f0.mean_f0_hz}, {"std_hz", f0.std_f0_hz}, {"voiced_frames", f0.voiced_frames}};
}

json f0_json(const std::optional<F0Stats>& f0) { return f0 ? json(*f0) : json(nullptr); }

void to_json(json& j, const BaselineStats& b) {
  j = json{{"n", b.n},
           {"mean_pause_pct", b.mean_pause_pct},
           {"std_pause_pct", b.std_pause_pct},
           {"mean_pause_count_per_min", b.mean_pause_count_per_min},
           {"std_pause_count_per_min", b.std_pause_count_per_min},
           {"f0_n", b.f0_n},
           {"mean_f0_std_hz", b.mean_f0_std_hz},
           {"std_f0_std_hz", b.std_f0_std_hz}};
}

void to_json(json& j, const Decision& d) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  j = json{{"verdict", verdict_name(d.verdict)},
           {"score", opt(d.score)},
           {"pause_score", opt(d.pause_score)},
           {"f0_score", opt(d.f0_score)},
           {"threshold_used", d.threshold_used},
           {"inputs", {{"current", d.current},
                       {"current_f0", f0_json(d.current_f0)},
                       {"baseline", d.baseline}}}};
}

}  // namespace pausegate
