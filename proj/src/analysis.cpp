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

#include "pausegate/analysis.hpp"

#include "pausegate/serialize.hpp"

namespace pausegate {

using nlohmann::json;

WindowPlan AnalysisConfig::plan_for(int sample_rate_hz) const {
  return window_plan_from_ms(window_ms, hop_ms, sample_rate_hz, taper);
}

AnalysisResult analyze(const AudioSignal& signal, const AnalysisConfig& cfg) {
  AnalysisResult r;
  r.plan = cfg.plan_for(signal.sample_rate_hz());
  DetectOptions options;
  options.noise_segment_s = cfg.noise_segment_s;
  r.segments = detect_pauses(signal, cfg.vad, cfg.band, r.plan, options);
  r.metrics = pause_metrics(r.segments);
  const std::vector<double> track = f0_track(signal, r.segments, cfg.band, r.plan);
  r.f0 = f0_stats(track);
  return r;
}

json analysis_report(const std::string& input_path, const AnalysisConfig& cfg,
                     const AnalysisResult& result, const std::optional<DecisionConfig>& decision_cfg,
                     const std::optional<Decision>& decision) {
  json window = result.plan;
  window["window_ms"] = cfg.window_ms;
  window["hop_ms"] = cfg.hop_ms;

  json config{{"band", cfg.band}, {"window", window}, {"vad", cfg.vad}};
  config["noise_segment_s"] =
      cfg.noise_segment_s ? json::array({cfg.noise_segment_s->first, cfg.noise_segment_s->second})
                          : json(nullptr);
  config["decision"] = decision_cfg ? json(*decision_cfg) : json(nullptr);

  return json{{"input_path", input_path},
              {"config", std::move(config)},
              {"segments", result.segments},
              {"metrics", result.metrics},
              {"f0", f0_json(result.f0)},
              {"decision", decision ? json(*decision) : json(nullptr)}};
}

}  // namespace pausegate
