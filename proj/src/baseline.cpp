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

#include "pausegate/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>

#include "pausegate/error.hpp"

namespace pausegate {

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd population(const std::vector<double>& v) {
  MeanStd out;
  if (v.empty()) return out;
  const double n = static_cast<double>(v.size());
  for (double x : v) out.mean += x;
  out.mean /= n;
  double sq = 0.0;
  for (double x : v) sq += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(sq / n);
  return out;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int field(std::string_view s, std::size_t pos, std::size_t len) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

bool is_valid_speaker_id(std::string_view id) {
  if (id.empty() || id.size() > kMaxSpeakerIdLen) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) || c == '_' ||
           c == '-';
  });
}

bool is_valid_timestamp(std::string_view ts) {
  // 0123456789012345678 9
  // YYYY-MM-DDTHH:MM:SS Z
  if (ts.size() != 20) return false;
  for (std::size_t i = 0; i < 19; ++i) {
    const char c = ts[i];
    const bool sep = i == 4 || i == 7 || i == 10 || i == 13 || i == 16;
    if (sep) {
      const char want = i == 10 ? 'T' : (i < 10 ? '-' : ':');
      if (c != want) return false;
    } else if (!is_digit(c)) {
      return false;
    }
  }
  if (ts[19] != 'Z') return false;
  const int month = field(ts, 5, 2);
  const int day = field(ts, 8, 2);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && field(ts, 11, 2) <= 23 &&
         field(ts, 14, 2) <= 59 && field(ts, 17, 2) <= 60;
}

std::string utc_now_iso8601() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const SpeakerProfile* ProfileStore::find(std::string_view speaker_id) const {
  auto it = profiles_.find(speaker_id);
  return it == profiles_.end() ? nullptr : &it->second;
}

const SpeakerProfile& ProfileStore::enroll(const std::string& speaker_id,
                                           const PauseMetrics& metrics,
                                           const std::optional<F0Stats>& f0,
                                           const std::string& recorded_at) {
  if (!is_valid_speaker_id(speaker_id)) {
    throw Error(ErrorCode::kInvalidSpeakerId,
                "speaker id '" + speaker_id + "' must be 1-64 characters of [A-Za-z0-9_-]");
  }
  if (!is_valid_timestamp(recorded_at)) {
    throw Error(ErrorCode::kInvalidTimestamp,
                "timestamp '" + recorded_at + "' is not YYYY-MM-DDTHH:MM:SSZ");
  }
  SpeakerProfile& profile = profiles_[speaker_id];
  profile.speaker_id = speaker_id;
  auto& list = profile.enrollments;
  auto pos = std::upper_bound(
      list.begin(), list.end(), recorded_at,
      [](const std::string& ts, const Enrollment& e) { return ts < e.recorded_at; });
  list.insert(pos, Enrollment{recorded_at, metrics, f0});
  return profile;
}

void ProfileStore::put(SpeakerProfile profile) {
  if (!is_valid_speaker_id(profile.speaker_id)) {
    throw Error(ErrorCode::kInvalidSpeakerId, "invalid speaker id '" + profile.speaker_id + "'");
  }
  for (std::size_t i = 0; i < profile.enrollments.size(); ++i) {
    const std::string& ts = profile.enrollments[i].recorded_at;
    if (!is_valid_timestamp(ts)) {
      throw Error(ErrorCode::kInvalidTimestamp, "invalid timestamp '" + ts + "'");
    }
    if (i > 0 && ts < profile.enrollments[i - 1].recorded_at) {
      throw Error(ErrorCode::kInvalidTimestamp,
                  "enrollments of '" + profile.speaker_id + "' are not time-ordered");
    }
  }
  std::string key = profile.speaker_id;
  profiles_.insert_or_assign(std::move(key), std::move(profile));
}

BaselineStats baseline_stats(const SpeakerProfile& profile) {
  if (profile.enrollments.empty()) {
    throw Error(ErrorCode::kEmptyProfile,
                "speaker '" + profile.speaker_id + "' has no enrollments");
  }
  std::vector<double> pct, per_min, f0_std;
  for (const Enrollment& e : profile.enrollments) {
    pct.push_back(e.metrics.pause_pct);
    per_min.push_back(e.metrics.pause_count_per_min());
    if (e.f0) f0_std.push_back(e.f0->std_f0_hz);
  }
  const MeanStd p = population(pct);
  const MeanStd c = population(per_min);
  const MeanStd f = population(f0_std);
  return {profile.enrollments.size(), p.mean, p.std, c.mean, c.std, f0_std.size(), f.mean, f.std};
}

void validate(const DecisionConfig& cfg) {
  if (!(cfg.k_sigma > 0.0)) throw Error(ErrorCode::kInvalidConfig, "k_sigma must be positive");
  if (cfg.min_enrollments < 1) {
    throw Error(ErrorCode::kInvalidConfig, "min_enrollments must be at least 1");
  }
  if (!(cfg.std_floor_pct > 0.0) || !(cfg.f0_std_floor_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "std floors must be positive");
  }
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kSober: return "sober";
    case Verdict::kIntoxicated: return "intoxicated";
    case Verdict::kInsufficientData: return "insufficient_data";
  }
  return "unknown";
}

Decision decide(const PauseMetrics& current, const BaselineStats& baseline,
                const DecisionConfig& cfg, const std::optional<F0Stats>& current_f0) {
  validate(cfg);
  Decision d;
  d.threshold_used = cfg.k_sigma;
  d.current = current;
  d.current_f0 = current_f0;
  d.baseline = baseline;
  if (baseline.n < cfg.min_enrollments) {
    d.verdict = Verdict::kInsufficientData;
    return d;
  }

  d.pause_score = (current.pause_pct - baseline.mean_pause_pct) /
                  std::max(baseline.std_pause_pct, cfg.std_floor_pct);
  d.score = d.pause_score;
  if (cfg.use_f0_variability && current_f0 && baseline.f0_n >= cfg.min_enrollments) {
    d.f0_score = (current_f0->std_f0_hz - baseline.mean_f0_std_hz) /
                 std::max(baseline.std_f0_std_hz, cfg.f0_std_floor_hz);
    d.score = std::max(*d.pause_score, *d.f0_score);
  }
  d.verdict = *d.score > cfg.k_sigma ? Verdict::kIntoxicated : Verdict::kSober;
  return d;
}

}  // namespace pausegate
