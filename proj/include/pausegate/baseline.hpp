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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pausegate/metrics.hpp"

namespace pausegate {

inline constexpr std::size_t kMaxSpeakerIdLen = 64;

// 1..64 characters from [A-Za-z0-9_-].
bool is_valid_speaker_id(std::string_view id);

// Accepts exactly "YYYY-MM-DDTHH:MM:SSZ" with in-range fields.
bool is_valid_timestamp(std::string_view ts);

std::string utc_now_iso8601();

struct Enrollment {
  std::string recorded_at;
  PauseMetrics metrics;
  std::optional<F0Stats> f0;

  friend bool operator==(const Enrollment&, const Enrollment&) = default;
};

struct SpeakerProfile {
  std::string speaker_id;
  std::vector<Enrollment> enrollments;  // ordered by recorded_at

  friend bool operator==(const SpeakerProfile&, const SpeakerProfile&) = default;
};

// In-memory set of profiles keyed by speaker id. Not synchronized; callers
// serialize writers (see StoreLock).
class ProfileStore {
 public:
  const SpeakerProfile* find(std::string_view speaker_id) const;

  // Adds an enrollment, creating the profile on first use. Enrollments stay
  // ordered by timestamp; equal timestamps keep arrival order.
  const SpeakerProfile& enroll(const std::string& speaker_id, const PauseMetrics& metrics,
                               const std::optional<F0Stats>& f0, const std::string& recorded_at);

  // Inserts or replaces a whole profile after validating it.
  void put(SpeakerProfile profile);

  const std::map<std::string, SpeakerProfile, std::less<>>& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }

  friend bool operator==(const ProfileStore&, const ProfileStore&) = default;

 private:
  std::map<std::string, SpeakerProfile, std::less<>> profiles_;
};

inline constexpr int kStoreSchemaVersion = 1;

std::string store_to_json(const ProfileStore& store);

// Strict parse: unknown or missing fields, wrong types and any version other
// than kStoreSchemaVersion raise kStoreCorrupt.
ProfileStore store_from_json(std::string_view text);

// Writes to a temporary sibling and renames it over `path`, so the previous
// contents survive any failure. Throws kStoreWriteFailure.
void save_store(const ProfileStore& store, const std::filesystem::path& path);

// Throws kFileUnreadable if the file cannot be read, kStoreCorrupt if it
// does not parse.
ProfileStore load_store(const std::filesystem::path& path);

// Like load_store but a missing file yields an empty store.
ProfileStore load_store_or_empty(const std::filesystem::path& path);

// Advisory lock on "<store>.lock" held for the lifetime of the object.
class StoreLock {
 public:
  enum class Mode { kShared, kExclusive };

  StoreLock(const std::filesystem::path& store_path, Mode mode);
  ~StoreLock();
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  int fd_ = -1;
};

// Locks the store, loads it, enrolls and saves it back atomically.
SpeakerProfile enroll_in_file(const std::filesystem::path& store_path,
                              const std::string& speaker_id, const PauseMetrics& metrics,
                              const std::optional<F0Stats>& f0, const std::string& recorded_at);

struct BaselineStats {
  std::size_t n = 0;
  double mean_pause_pct = 0.0;
  double std_pause_pct = 0.0;
  double mean_pause_count_per_min = 0.0;
  double std_pause_count_per_min = 0.0;
  // Spread of per-recording F0 variability over enrollments that carry F0.
  std::size_t f0_n = 0;
  double mean_f0_std_hz = 0.0;
  double std_f0_std_hz = 0.0;

  friend bool operator==(const BaselineStats&, const BaselineStats&) = default;
};

// Population mean/std over all enrollments. Throws kEmptyProfile when the
// profile has none.
BaselineStats baseline_stats(const SpeakerProfile& profile);

struct DecisionConfig {
  double k_sigma = 2.0;
  std::size_t min_enrollments = 3;
  double std_floor_pct = 2.0;
  bool use_f0_variability = false;
  double f0_std_floor_hz = 5.0;

  friend bool operator==(const DecisionConfig&, const DecisionConfig&) = default;
};

void validate(const DecisionConfig& cfg);

enum class Verdict { kSober, kIntoxicated, kInsufficientData };

std::string_view verdict_name(Verdict v);

struct Decision {
  Verdict verdict = Verdict::kInsufficientData;
  // Standardized exceedance; absent for insufficient_data.
  std::optional<double> score;
  std::optional<double> pause_score;
  std::optional<double> f0_score;
  double threshold_used = 0.0;
  PauseMetrics current;
  std::optional<F0Stats> current_f0;
  BaselineStats baseline;
};

// score = (pause_pct - mean) / max(std, std_floor_pct); intoxicated iff
// score > k_sigma. With use_f0_variability the F0 spread term is folded in
// via max() when both sides carry F0 data.
Decision decide(const PauseMetrics& current, const BaselineStats& baseline,
                const DecisionConfig& cfg, const std::optional<F0Stats>& current_f0 = std::nullopt);

}  // namespace pausegate
