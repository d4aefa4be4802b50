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

// JSON views of the domain types, shared by the store, the CLI reports and
// the Python bindings.

#include "json.hpp"
#include "pausegate/baseline.hpp"
#include "pausegate/metrics.hpp"
#include "pausegate/pause_detection.hpp"
#include "pausegate/spectral.hpp"

namespace pausegate {

void to_json(nlohmann::json& j, const BandConfig& band);
void to_json(nlohmann::json& j, const WindowPlan& plan);
void to_json(nlohmann::json& j, const VadConfig& cfg);
void to_json(nlohmann::json& j, const DecisionConfig& cfg);
void to_json(nlohmann::json& j, const Segment& seg);
void to_json(nlohmann::json& j, const SegmentList& list);
void to_json(nlohmann::json& j, const PauseMetrics& m);
void to_json(nlohmann::json& j, const F0Stats& f0);
void to_json(nlohmann::json& j, const BaselineStats& b);
void to_json(nlohmann::json& j, const Decision& d);

// null when absent.
nlohmann::json f0_json(const std::optional<F0Stats>& f0);

}  // namespace pausegate
