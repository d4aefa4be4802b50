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

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>

#include "pausegate/baseline.hpp"
#include "pausegate/error.hpp"
#include "pausegate/serialize.hpp"

namespace pausegate {

namespace {

using nlohmann::json;

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(ErrorCode::kStoreCorrupt, "profile store is corrupt: " + why);
}

const json& expect_object(const json& j, std::initializer_list<const char*> keys,
                          const std::string& where) {
  if (!j.is_object()) corrupt(where + " is not an object");
  for (const char* k : keys) {
    if (!j.contains(k)) corrupt(where + " lacks field '" + k + "'");
  }
  if (j.size() != keys.size()) {
    for (const auto& [k, v] : j.items()) {
      bool known = false;
      for (const char* want : keys) known = known || k == want;
      if (!known) corrupt(where + " has unknown field '" + k + "'");
    }
  }
  return j;
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) corrupt(where + "." + key + " is not a number");
  return v.get<double>();
}

std::size_t count(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) corrupt(where + "." + key + " is not a non-negative integer");
  return v.get<std::size_t>();
}

json enrollment_json(const Enrollment& e) {
  return json{{"recorded_at", e.recorded_at},
              {"pause_count", e.metrics.pause_count},
              {"pause_total_s", e.metrics.pause_total_s},
              {"speech_total_s", e.metrics.speech_total_s},
              {"utterance_s", e.metrics.utterance_s},
              {"pause_pct", e.metrics.pause_pct},
              {"mean_pause_s", e.metrics.mean_pause_s},
              {"f0", f0_json(e.f0)}};
}

Enrollment parse_enrollment(const json& j, const std::string& where) {
  expect_object(j, {"recorded_at", "pause_count", "pause_total_s", "speech_total_s", "utterance_s",
                    "pause_pct", "mean_pause_s", "f0"},
                where);
  Enrollment e;
  if (!j["recorded_at"].is_string()) corrupt(where + ".recorded_at is not a string");
  e.recorded_at = j["recorded_at"].get<std::string>();
  e.metrics.pause_count = count(j, "pause_count", where);
  e.metrics.pause_total_s = number(j, "pause_total_s", where);
  e.metrics.speech_total_s = number(j, "speech_total_s", where);
  e.metrics.utterance_s = number(j, "utterance_s", where);
  e.metrics.pause_pct = number(j, "pause_pct", where);
  e.metrics.mean_pause_s = number(j, "mean_pause_s", where);
  const json& f0 = j["f0"];
  if (!f0.is_null()) {
    const std::string f0_where = where + ".f0";
    expect_object(f0, {"mean_hz", "std_hz", "voiced_frames"}, f0_where);
    e.f0 = F0Stats{number(f0, "mean_hz", f0_where), number(f0, "std_hz", f0_where),
                   count(f0, "voiced_frames", f0_where)};
  }
  return e;
}

}  // namespace

std::string store_to_json(const ProfileStore& store) {
  json profiles = json::array();
  for (const auto& [id, profile] : store.profiles()) {
    json enrollments = json::array();
    for (const Enrollment& e : profile.enrollments) enrollments.push_back(enrollment_json(e));
    profiles.push_back({{"speaker_id", id}, {"enrollments", std::move(enrollments)}});
  }
  json doc{{"version", kStoreSchemaVersion}, {"profiles", std::move(profiles)}};
  return doc.dump(2) + "\n";
}

ProfileStore store_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    corrupt(std::string("invalid JSON (") + e.what() + ")");
  }
  expect_object(doc, {"version", "profiles"}, "document");
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kStoreSchemaVersion) {
    corrupt("unsupported schema version " + doc["version"].dump());
  }
  if (!doc["profiles"].is_array()) corrupt("profiles is not an array");

  ProfileStore store;
  std::size_t index = 0;
  for (const json& p : doc["profiles"]) {
    const std::string where = "profiles[" + std::to_string(index++) + "]";
    expect_object(p, {"speaker_id", "enrollments"}, where);
    if (!p["speaker_id"].is_string()) corrupt(where + ".speaker_id is not a string");
    if (!p["enrollments"].is_array()) corrupt(where + ".enrollments is not an array");
    SpeakerProfile profile;
    profile.speaker_id = p["speaker_id"].get<std::string>();
    if (store.find(profile.speaker_id)) corrupt("duplicate speaker id '" + profile.speaker_id + "'");
    std::size_t e_index = 0;
    for (const json& e : p["enrollments"]) {
      profile.enrollments.push_back(
          parse_enrollment(e, where + ".enrollments[" + std::to_string(e_index++) + "]"));
    }
    try {
      store.put(std::move(profile));
    } catch (const Error& e) {
      corrupt(e.what());
    }
  }
  return store;
}

void save_store(const ProfileStore& store, const std::filesystem::path& path) {
  const std::string text = store_to_json(store);
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());

  auto fail = [&](const std::string& what) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kStoreWriteFailure, what);
  };

  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) fail("cannot create " + tmp.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < text.size()) {
    ssize_t n = ::write(fd, text.data() + written, text.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fail("write to " + tmp.string() + " failed: " + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) fail("flushing " + tmp.string() + " failed");
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    fail("cannot replace " + path.string() + ": " + std::strerror(errno));
  }
}

ProfileStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot open store " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kFileUnreadable, "read error on store " + path.string());
  return store_from_json(text);
}

ProfileStore load_store_or_empty(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  return load_store(path);
}

StoreLock::StoreLock(const std::filesystem::path& store_path, Mode mode) {
  std::filesystem::path lock_path = store_path;
  lock_path += ".lock";
  fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::kStoreLocked,
                "cannot open lock file " + lock_path.string() + ": " + std::strerror(errno));
  }
  const int op = mode == Mode::kExclusive ? LOCK_EX : LOCK_SH;
  while (::flock(fd_, op) != 0) {
    if (errno == EINTR) continue;
    ::close(fd_);
    throw Error(ErrorCode::kStoreLocked, "cannot lock " + lock_path.string());
  }
}

StoreLock::~StoreLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

SpeakerProfile enroll_in_file(const std::filesystem::path& store_path,
                              const std::string& speaker_id, const PauseMetrics& metrics,
                              const std::optional<F0Stats>& f0, const std::string& recorded_at) {
  if (!is_valid_speaker_id(speaker_id)) {
    throw Error(ErrorCode::kInvalidSpeakerId,
                "speaker id '" + speaker_id + "' must be 1-64 characters of [A-Za-z0-9_-]");
  }
  StoreLock lock(store_path, StoreLock::Mode::kExclusive);
  ProfileStore store = load_store_or_empty(store_path);
  SpeakerProfile profile = store.enroll(speaker_id, metrics, f0, recorded_at);
  save_store(store, store_path);
  return profile;
}

}  // namespace pausegate
