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

// pausegate: pause-based screening from the command line.
//
//   pausegate analyze --wav FILE [tuning flags]
//   pausegate enroll  --speaker ID --wav FILE --store STORE.json
//   pausegate decide  --speaker ID --wav FILE --store STORE.json
//   pausegate synth   --script SCRIPT.json --out FILE.wav
//
// stdout carries exactly one JSON document; diagnostics go to stderr.
// Exit codes: 0 ok/sober, 1 intoxicated, 2 I/O or format error,
// 3 corrupt store, 4 invalid speaker id, 5 insufficient baseline.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pausegate/analysis.hpp"
#include "pausegate/audio.hpp"
#include "pausegate/baseline.hpp"
#include "pausegate/error.hpp"
#include "pausegate/serialize.hpp"
#include "pausegate/synth.hpp"

namespace {

using namespace pausegate;

constexpr int kExitOk = 0;
constexpr int kExitIntoxicated = 1;
constexpr int kExitIo = 2;
constexpr int kExitStoreCorrupt = 3;
constexpr int kExitBadSpeaker = 4;
constexpr int kExitInsufficient = 5;

struct Options {
  std::string wav;
  std::string speaker;
  std::string store;
  std::string script;
  std::string out;
  std::string noise_segment;
  std::string recorded_at;

  double band_low = 80.0;
  double band_high = 300.0;
  double window_ms = 32.0;
  double hop_ms = 16.0;
  bool hann = false;
  double ratio_threshold = 4.0;
  double min_pause_ms = 200.0;
  double min_speech_ms = 100.0;
  double noise_head_ms = 300.0;

  double k_sigma = 2.0;
  std::size_t min_enrollments = 3;
  double std_floor_pct = 2.0;
  bool use_f0_variability = false;
};

void add_analysis_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--wav", o.wav, "Input WAV file (16-bit PCM, mono or stereo)")->required();
  cmd->add_option("--band-low", o.band_low, "Lower band edge in Hz")->capture_default_str();
  cmd->add_option("--band-high", o.band_high, "Upper band edge in Hz")->capture_default_str();
  cmd->add_option("--window-ms", o.window_ms, "Analysis window length")->capture_default_str();
  cmd->add_option("--hop-ms", o.hop_ms, "Hop between windows")->capture_default_str();
  cmd->add_flag("--hann", o.hann, "Apply a Hann taper before the FFT");
  cmd->add_option("--ratio-threshold", o.ratio_threshold,
                  "Speech when band energy exceeds this multiple of the noise floor")
      ->capture_default_str();
  cmd->add_option("--min-pause-ms", o.min_pause_ms, "Shortest gap counted as a pause")
      ->capture_default_str();
  cmd->add_option("--min-speech-ms", o.min_speech_ms, "Shortest burst counted as speech")
      ->capture_default_str();
  cmd->add_option("--noise-head-ms", o.noise_head_ms, "Leading audio used as the noise reference")
      ->capture_default_str();
  cmd->add_option("--noise-segment", o.noise_segment,
                  "Explicit noise reference START:END in seconds (overrides the head)");
}

void add_decision_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k-sigma", o.k_sigma, "Verdict threshold on the standardized score")
      ->capture_default_str();
  cmd->add_option("--min-enrollments", o.min_enrollments, "Enrollments needed before deciding")
      ->capture_default_str();
  cmd->add_option("--std-floor", o.std_floor_pct, "Lower bound on baseline spread (pause pct)")
      ->capture_default_str();
  cmd->add_flag("--use-f0-variability", o.use_f0_variability,
                "Also flag recordings whose F0 spread exceeds the baseline");
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double start = std::stod(a, &used_a);
    const double end = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing text");
    return {start, end};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidConfig,
                "--noise-segment expects START:END in seconds, got '" + text + "'");
  }
}

AnalysisConfig analysis_config(const Options& o) {
  AnalysisConfig cfg;
  cfg.band = {o.band_low, o.band_high};
  cfg.vad.energy_ratio_threshold = o.ratio_threshold;
  cfg.vad.min_pause_s = o.min_pause_ms / 1000.0;
  cfg.vad.min_speech_s = o.min_speech_ms / 1000.0;
  cfg.vad.noise_head_s = o.noise_head_ms / 1000.0;
  cfg.window_ms = o.window_ms;
  cfg.hop_ms = o.hop_ms;
  cfg.taper = o.hann ? Taper::kHann : Taper::kRectangular;
  if (!o.noise_segment.empty()) cfg.noise_segment_s = parse_range(o.noise_segment);
  return cfg;
}

DecisionConfig decision_config(const Options& o) {
  DecisionConfig cfg;
  cfg.k_sigma = o.k_sigma;
  cfg.min_enrollments = o.min_enrollments;
  cfg.std_floor_pct = o.std_floor_pct;
  cfg.use_f0_variability = o.use_f0_variability;
  validate(cfg);
  return cfg;
}

void require_speaker(const std::string& id) {
  if (!is_valid_speaker_id(id)) {
    throw Error(ErrorCode::kInvalidSpeakerId,
                "speaker id '" + id + "' must be 1-64 characters of [A-Za-z0-9_-]");
  }
}

void emit(const nlohmann::json& doc) { std::cout << doc.dump(2) << '\n'; }

int run_analyze(const Options& o) {
  const AnalysisConfig cfg = analysis_config(o);
  const AnalysisResult result = analyze(load_wav(o.wav), cfg);
  emit(analysis_report(o.wav, cfg, result));
  return kExitOk;
}

int run_enroll(const Options& o) {
  require_speaker(o.speaker);
  const std::string recorded_at = o.recorded_at.empty() ? utc_now_iso8601() : o.recorded_at;
  if (!is_valid_timestamp(recorded_at)) {
    throw Error(ErrorCode::kInvalidTimestamp,
                "--recorded-at expects YYYY-MM-DDTHH:MM:SSZ, got '" + recorded_at + "'");
  }
  const AnalysisResult result = analyze(load_wav(o.wav), analysis_config(o));
  const SpeakerProfile profile =
      enroll_in_file(o.store, o.speaker, result.metrics, result.f0, recorded_at);
  emit({{"speaker_id", profile.speaker_id},
        {"enrollment_count", profile.enrollments.size()},
        {"recorded_at", recorded_at},
        {"metrics", result.metrics},
        {"f0", f0_json(result.f0)}});
  return kExitOk;
}

int run_decide(const Options& o) {
  require_speaker(o.speaker);
  const DecisionConfig dcfg = decision_config(o);
  ProfileStore store;
  {
    StoreLock lock(o.store, StoreLock::Mode::kShared);
    store = load_store_or_empty(o.store);
  }
  const AnalysisResult result = analyze(load_wav(o.wav), analysis_config(o));
  const SpeakerProfile* profile = store.find(o.speaker);
  const BaselineStats baseline =
      profile && !profile->enrollments.empty() ? baseline_stats(*profile) : BaselineStats{};
  const Decision decision = decide(result.metrics, baseline, dcfg, result.f0);

  nlohmann::json doc = decision;
  doc["speaker_id"] = o.speaker;
  emit(doc);
  switch (decision.verdict) {
    case Verdict::kSober: return kExitOk;
    case Verdict::kIntoxicated: return kExitIntoxicated;
    case Verdict::kInsufficientData: return kExitInsufficient;
  }
  return kExitIo;
}

int run_synth(const Options& o) {
  std::ifstream in(o.script, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot open script " + o.script);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const synth::Rendered rendered = synth::render(synth::script_from_json(text));
  write_wav(rendered.signal, o.out);
  emit({{"out", o.out},
        {"samples", rendered.signal.size()},
        {"sample_rate_hz", rendered.signal.sample_rate_hz()},
        {"truth", rendered.truth}});
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStoreCorrupt: return kExitStoreCorrupt;
    case ErrorCode::kInvalidSpeakerId: return kExitBadSpeaker;
    default: return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pause-based speech screening against a per-speaker baseline", "pausegate"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Detect pauses and report metrics as JSON");
  add_analysis_flags(analyze_cmd, o);

  auto* enroll_cmd = app.add_subcommand("enroll", "Add a recording to a speaker's baseline");
  add_analysis_flags(enroll_cmd, o);
  enroll_cmd->add_option("--speaker", o.speaker, "Speaker id ([A-Za-z0-9_-], up to 64)")->required();
  enroll_cmd->add_option("--store", o.store, "Profile store JSON file")->required();
  enroll_cmd->add_option("--recorded-at", o.recorded_at,
                         "Enrollment timestamp YYYY-MM-DDTHH:MM:SSZ (default: now)");

  auto* decide_cmd = app.add_subcommand("decide", "Compare a recording with the speaker baseline");
  add_analysis_flags(decide_cmd, o);
  add_decision_flags(decide_cmd, o);
  decide_cmd->add_option("--speaker", o.speaker, "Speaker id")->required();
  decide_cmd->add_option("--store", o.store, "Profile store JSON file")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic test script to WAV");
  synth_cmd->add_option("--script", o.script, "Script JSON file")->required();
  synth_cmd->add_option("--out", o.out, "Output WAV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }

  try {
    if (*analyze_cmd) return run_analyze(o);
    if (*enroll_cmd) return run_enroll(o);
    if (*decide_cmd) return run_decide(o);
    if (*synth_cmd) return run_synth(o);
  } catch (const Error& e) {
    std::cerr << "pausegate: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "pausegate: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}
