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

#include "pausegate/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pausegate/error.hpp"

namespace pausegate::synth {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& why) {
  throw Error(ErrorCode::kInvalidScript, "invalid script: " + why);
}

double require_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) invalid(where + " lacks '" + key + "'");
  if (!j[key].is_number()) invalid(where + "." + key + " is not a number");
  return j[key].get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* want : keys) known = known || k == want;
    if (!known) invalid(where + " has unknown field '" + k + "'");
  }
}

}  // namespace

std::size_t event_samples(const Event& event, int sample_rate_hz) {
  return static_cast<std::size_t>(std::llround(event.duration_s * sample_rate_hz));
}

void validate(const Script& script) {
  if (script.sample_rate_hz < kMinSampleRateHz) {
    invalid("sample rate " + std::to_string(script.sample_rate_hz) + " Hz is below " +
            std::to_string(kMinSampleRateHz));
  }
  if (script.events.empty()) invalid("no events");
  const double nyquist = script.sample_rate_hz / 2.0;
  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const Event& e = script.events[i];
    const std::string where = "event " + std::to_string(i);
    if (!(e.duration_s > 0.0) || event_samples(e, script.sample_rate_hz) == 0) {
      invalid(where + " has no duration");
    }
    if (const auto* tone = std::get_if<Tone>(&e.kind)) {
      if (!(tone->freq_hz > 0.0 && tone->freq_hz < nyquist)) {
        std::ostringstream msg;
        msg << where << " tone at " << tone->freq_hz << " Hz is outside (0, " << nyquist << ") Hz";
        invalid(msg.str());
      }
      if (!(tone->amplitude > 0.0 && tone->amplitude <= 1.0)) invalid(where + " amplitude outside (0, 1]");
    } else if (const auto* noise = std::get_if<Noise>(&e.kind)) {
      if (!(noise->amplitude > 0.0 && noise->amplitude <= 1.0)) invalid(where + " amplitude outside (0, 1]");
    }
  }
}

Script script_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) invalid("document is not an object");
  reject_unknown(doc, {"sample_rate_hz", "seed", "events"}, "document");

  Script script;
  if (!doc.contains("sample_rate_hz") || !doc["sample_rate_hz"].is_number_integer()) {
    invalid("sample_rate_hz must be an integer");
  }
  script.sample_rate_hz = doc["sample_rate_hz"].get<int>();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) invalid("seed must be a non-negative integer");
    script.seed = doc["seed"].get<std::uint64_t>();
  }
  if (!doc.contains("events") || !doc["events"].is_array()) invalid("events must be an array");

  std::size_t index = 0;
  for (const json& ev : doc["events"]) {
    const std::string where = "events[" + std::to_string(index++) + "]";
    if (!ev.is_object()) invalid(where + " is not an object");
    if (!ev.contains("kind") || !ev["kind"].is_string()) invalid(where + " lacks a string 'kind'");
    const std::string kind = ev["kind"].get<std::string>();
    Event event;
    event.duration_s = require_number(ev, "duration_s", where);
    if (kind == "tone") {
      reject_unknown(ev, {"kind", "duration_s", "freq_hz", "amplitude"}, where);
      event.kind = Tone{require_number(ev, "freq_hz", where), require_number(ev, "amplitude", where)};
    } else if (kind == "silence") {
      reject_unknown(ev, {"kind", "duration_s"}, where);
      event.kind = Silence{};
    } else if (kind == "noise") {
      reject_unknown(ev, {"kind", "duration_s", "amplitude"}, where);
      event.kind = Noise{require_number(ev, "amplitude", where)};
    } else {
      invalid(where + " has unknown kind '" + kind + "'");
    }
    script.events.push_back(event);
  }
  validate(script);
  return script;
}

Rendered render(const Script& script, const VadConfig& cfg) {
  validate(script);
  const double rate = script.sample_rate_hz;
  std::mt19937_64 rng(script.seed);

  std::vector<double> samples;
  std::vector<FrameLabel> labels;
  for (const Event& e : script.events) {
    const std::size_t n = event_samples(e, script.sample_rate_hz);
    labels.push_back({static_cast<double>(samples.size()) / rate, e.is_tone()});
    if (const auto* tone = std::get_if<Tone>(&e.kind)) {
      const double w = 2.0 * std::numbers::pi * tone->freq_hz / rate;
      for (std::size_t i = 0; i < n; ++i) {
        samples.push_back(tone->amplitude * std::sin(w * static_cast<double>(i)));
      }
    } else if (const auto* noise = std::get_if<Noise>(&e.kind)) {
      for (std::size_t i = 0; i < n; ++i) {
        // 53 random bits -> [0, 1); avoids the implementation-defined
        // std::uniform_real_distribution so output is portable.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        samples.push_back(noise->amplitude * (2.0 * u - 1.0));
      }
    } else {
      samples.insert(samples.end(), n, 0.0);
    }
  }

  const double last_len_s = static_cast<double>(samples.size()) / rate - labels.back().start_s;
  SegmentList truth = segment(labels, last_len_s, cfg);
  return {AudioSignal(std::move(samples), script.sample_rate_hz), std::move(truth)};
}

}  // namespace pausegate::synth
