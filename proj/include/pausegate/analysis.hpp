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
#include <string>
#include <utility>

#include "json.hpp"
#include "pausegate/audio.hpp"
#include "pausegate/baseline.hpp"
#include "pausegate/metrics.hpp"
#include "pausegate/pause_detection.hpp"
#include "pausegate/spectral.hpp"

namespace pausegate {

// Everything that determines an analysis. Window and hop are kept in
// milliseconds and converted to samples at the rate of each input file.
struct AnalysisConfig {
  BandConfig band;
  VadConfig vad;
  double window_ms = 32.0;
  double hop_ms = 16.0;
  Taper taper = Taper::kRectangular;
  std::optional<std::pair<double, double>> noise_segment_s;

  WindowPlan plan_for(int sample_rate_hz) const;
};

struct AnalysisResult {
  WindowPlan plan;
  SegmentList segments;
  PauseMetrics metrics;
  std::optional<F0Stats> f0;
};

AnalysisResult analyze(const AudioSignal& signal, const AnalysisConfig& cfg);

// Report document: input path, effective configuration, segments, metrics,
// F0 statistics and (when given) the decision. Contains no timestamps, so
// identical inputs give byte-identical output.
nlohmann::json analysis_report(const std::string& input_path, const AnalysisConfig& cfg,
                               const AnalysisResult& result,
                               const std::optional<DecisionConfig>& decision_cfg = std::nullopt,
                               const std::optional<Decision>& decision = std::nullopt);

}  // namespace pausegate
