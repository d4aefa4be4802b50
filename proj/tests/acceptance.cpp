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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "pausegate/analysis.hpp"
#include "pausegate/baseline.hpp"
#include "pausegate/error.hpp"
#include "pausegate/pause_detection.hpp"
#include "pausegate/spectral.hpp"
#include "pausegate/synth.hpp"
#include "scripts.hpp"
#include "test_util.hpp"

using namespace pausegate;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Tones separated by noise background. Tone RMS A/sqrt(2) over noise RMS
// a/sqrt(3) is at least 20 dB.
synth::Script random_script(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_tones(2, 8);
  std::uniform_real_distribution<double> tone_s(0.3, 2.0), gap_s(0.4, 1.2), freq(90.0, 290.0),
      amp(0.2, 0.9), snr_db(20.0, 40.0);
  const double tone_amp = amp(rng);
  const double noise_amp = tone_amp / std::sqrt(2.0) * std::sqrt(3.0) / std::pow(10.0, snr_db(rng) / 20.0);
  synth::Script s;
  s.seed = rng();
  s.events.push_back({synth::Noise{noise_amp}, gap_s(rng)});
  const int n = n_tones(rng);
  for (int i = 0; i < n; ++i) {
    s.events.push_back({synth::Tone{freq(rng), tone_amp}, tone_s(rng)});
    s.events.push_back({synth::Noise{noise_amp}, gap_s(rng)});
  }
  return s;
}

Outcome spectral_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> len(2, 256);
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w(len(rng));
    for (double& v : w) v = x(rng);
    const auto got = real_spectrum(w).magnitudes;
    const auto ref = oracle::dft_magnitudes(w);
    if (got.size() != ref.size()) return {false, "bin count mismatch"};
    for (std::size_t k = 0; k < ref.size(); ++k) {
      worst = std::max(worst, std::abs(got[k] - ref[k]) / std::max(ref[k], 1e-3));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-6 && t < 5.0, fmt("worst relative error %.2e, %.2f s", worst, t)};
}

Outcome frequency_accuracy() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> freq(88.0, 292.0), phase(0.0, 6.283185307179586);
  int ok = 0, total = 0;
  double worst = 0.0;
  for (std::size_t m : {512u, 4096u}) {
    const double bin = 16000.0 / static_cast<double>(m);
    for (int trial = 0; trial < 50; ++trial) {
      const double f = freq(rng);
      const auto w = oracle::sine(f, 16000.0, m, 0.8, phase(rng));
      const auto got = max_frequency_in_band(w, 16000.0);
      ++total;
      if (!got) continue;
      const double err = std::abs(*got - f);
      worst = std::max(worst, err / bin);
      if (err <= bin) ++ok;
    }
  }
  return {ok == total, fmt("%.0f/%.0f within one bin, worst %.2f bins", ok, total, worst)};
}

Outcome pause_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  const VadConfig vad;
  const BandConfig band;
  const WindowPlan plan = default_window_plan(16000);
  const double tol = static_cast<double>(plan.window_len_samples + plan.hop_len_samples) / 16000.0;
  int exact = 0, boundary_bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = synth::render(random_script(rng), vad);
    const auto got = detect_pauses(r.signal, vad, band, plan);
    if (got.pause_count() != r.truth.pause_count()) continue;
    ++exact;
    if (got.segments.size() != r.truth.segments.size()) {
      ++boundary_bad;
      continue;
    }
    for (std::size_t i = 0; i < got.segments.size(); ++i) {
      const double d = std::max(std::abs(got.segments[i].start_s - r.truth.segments[i].start_s),
                                std::abs(got.segments[i].end_s - r.truth.segments[i].end_s));
      worst = std::max(worst, d);
      if (d > tol + 1e-9) ++boundary_bad;
    }
  }
  const double t = seconds_since(t0);
  return {exact >= 98 && boundary_bad == 0 && t < 30.0,
          fmt("exact count %.0f/100, worst boundary %.3f s, %.2f s", exact, worst, t)};
}

Outcome gain_invariance() {
  std::mt19937_64 rng(404);
  const VadConfig vad;
  const BandConfig band;
  const WindowPlan plan = default_window_plan(16000);
  const double hop = static_cast<double>(plan.hop_len_samples) / 16000.0;
  int ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = synth::render(random_script(rng), vad);
    const auto ref = detect_pauses(r.signal, vad, band, plan);
    bool same = !ref.empty();
    for (double c : {0.1, 0.3}) {
      const auto got = detect_pauses(r.signal.scaled(c), vad, band, plan);
      if (got.segments.size() != ref.segments.size()) {
        same = false;
        continue;
      }
      for (std::size_t i = 0; i < ref.segments.size(); ++i) {
        if (got.segments[i].kind != ref.segments[i].kind ||
            std::abs(got.segments[i].start_s - ref.segments[i].start_s) > hop + 1e-9 ||
            std::abs(got.segments[i].end_s - ref.segments[i].end_s) > hop + 1e-9) {
          same = false;
        }
      }
    }
    if (same) ++ok;
  }
  return {ok == 20, fmt("%.0f/20 scripts invariant", ok)};
}

Outcome decision_rule() {
  test_util::TempDir dir;
  auto render = [&](const std::string& name, double pct, test_util::Snap snap = test_util::Snap::kNearest) {
    const auto script =
        dir.write(name + ".json", test_util::script_json(test_util::pause_pct_script(pct, snap)));
    const auto wav = (dir.path() / (name + ".wav")).string();
    if (test_util::run_cli({"synth", "--script", script.string(), "--out", wav}).exit_code != 0) {
      throw std::runtime_error("synth failed for " + name);
    }
    return wav;
  };
  auto measured_pct = [](const std::string& wav) {
    auto r = test_util::run_cli({"analyze", "--wav", wav});
    if (r.exit_code != 0) throw std::runtime_error("analyze failed");
    return json::parse(r.out)["metrics"]["pause_pct"].get<double>();
  };

  const std::string store = (dir.path() / "profiles.json").string();
  const std::string store2 = (dir.path() / "two.json").string();
  std::string detail;
  bool pass = true;
  int day = 1;
  for (double pct : {10.0, 12.0, 14.0}) {
    const auto wav = render("base" + std::to_string(day), pct);
    const double got = measured_pct(wav);
    if (std::abs(got - pct) > 1.0) pass = false;
    detail += fmt("%.2f ", got);
    const std::string ts = "2026-06-0" + std::to_string(day) + "T08:00:00Z";
    if (test_util::run_cli({"enroll", "--speaker", "driver", "--wav", wav, "--store", store, "--recorded-at", ts})
            .exit_code != 0) {
      pass = false;
    }
    if (day <= 2 &&
        test_util::run_cli({"enroll", "--speaker", "driver", "--wav", wav, "--store", store2, "--recorded-at", ts})
                .exit_code != 0) {
      pass = false;
    }
    ++day;
  }
  const auto high = render("probe_high", 22.0, test_util::Snap::kUp);
  const auto low = render("probe_low", 12.0, test_util::Snap::kDown);
  const double high_pct = measured_pct(high);
  const double low_pct = measured_pct(low);
  if (high_pct < 22.0 || low_pct > 12.0 + 1e-9) pass = false;
  const int e_high = test_util::run_cli({"decide", "--speaker", "driver", "--wav", high, "--store", store}).exit_code;
  const int e_low = test_util::run_cli({"decide", "--speaker", "driver", "--wav", low, "--store", store}).exit_code;
  const int e_few = test_util::run_cli({"decide", "--speaker", "driver", "--wav", high, "--store", store2}).exit_code;
  pass = pass && e_high == 1 && e_low == 0 && e_few == 5;
  detail = "baseline pct " + detail +
           fmt("; probe %.2f -> exit %.0f; probe %.2f", high_pct, e_high, low_pct) +
           fmt(" -> exit %.0f; two enrollments -> exit %.0f", e_low, e_few);
  return {pass, detail};
}

Outcome invariant_fuzz() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> len(0, 400);
  std::uniform_real_distribution<double> p_speech(0.05, 0.95), hop_ms(5.0, 30.0);
  std::uniform_real_distribution<double> min_pause(0.05, 0.6), min_speech(0.02, 0.4);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    VadConfig cfg;
    cfg.min_pause_s = min_pause(rng);
    cfg.min_speech_s = min_speech(rng);
    const double hop = hop_ms(rng) / 1000.0;
    std::bernoulli_distribution speech(p_speech(rng));
    std::vector<FrameLabel> labels(static_cast<std::size_t>(len(rng)) + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = {static_cast<double>(i) * hop, speech(rng)};
    const auto list = segment(labels, hop, cfg);
    if (check_invariants(list, cfg)) ++bad;
  }
  return {bad == 0, fmt("%.0f/1000 outputs violate an invariant", bad)};
}

Outcome persistence() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> real(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 8), big(0, 400);
  std::bernoulli_distribution coin(0.5);
  test_util::TempDir dir;
  const auto path = dir.path() / "profiles.json";
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ProfileStore store;
    const std::string id = "spk_" + std::to_string(trial);
    for (int e = count(rng); e > 0; --e) {
      PauseMetrics m{static_cast<std::size_t>(big(rng)), real(rng) * 30, real(rng) * 120, real(rng) * 150,
                     real(rng) * 100, real(rng)};
      std::optional<F0Stats> f0;
      if (coin(rng)) f0 = F0Stats{80 + real(rng) * 220, real(rng) * 60, static_cast<std::size_t>(big(rng))};
      char ts[32];
      std::snprintf(ts, sizeof ts, "2026-%02d-%02dT%02d:%02d:00Z", 1 + big(rng) % 12, 1 + big(rng) % 28,
                    big(rng) % 24, big(rng) % 60);
      store.enroll(id, m, f0, ts);
    }
    save_store(store, path);
    if (load_store(path) == store) ++ok;
  }

  const std::string text = test_util::read_file(path);
  const std::string truncated = text.substr(0, text.size() * 2 / 3);
  dir.write("profiles.json", truncated);
  const auto code = test_util::error_of([&] { load_store(path); });

  synth::Script s;
  s.events = {{synth::Silence{}, 0.5}, {synth::Tone{150.0, 0.7}, 1.0}, {synth::Silence{}, 0.5}};
  write_wav(synth::render(s).signal, dir.path() / "a.wav");
  const int exit_code = test_util::run_cli({"enroll", "--speaker", "spk_0", "--wav",
                                            (dir.path() / "a.wav").string(), "--store", path.string()})
                            .exit_code;
  const bool intact = test_util::read_file(path) == truncated;
  return {ok == 100 && code == ErrorCode::kStoreCorrupt && exit_code == 3 && intact,
          fmt("%.0f/100 round trips exact; truncated store: enroll exit %.0f, file intact %.0f", ok, exit_code,
              intact)};
}

Outcome f0_sanity() {
  AnalysisConfig cfg;
  const double bin = 16000.0 / 512.0;
  synth::Script steady;
  steady.events = {{synth::Silence{}, 0.5}, {synth::Tone{150.0, 0.7}, 2.0}, {synth::Silence{}, 0.5}};
  const auto a = analyze(synth::render(steady).signal, cfg);
  synth::Script split;
  split.events = {{synth::Silence{}, 0.5},
                  {synth::Tone{120.0, 0.7}, 1.5},
                  {synth::Tone{240.0, 0.7}, 1.5},
                  {synth::Silence{}, 0.5}};
  const auto b = analyze(synth::render(split).signal, cfg);
  if (!a.f0 || !b.f0) return {false, "no voiced frames"};
  const bool pass = std::abs(a.f0->mean_f0_hz - 150.0) <= bin && a.f0->std_f0_hz <= bin && b.f0->std_f0_hz >= 40.0;
  return {pass, fmt("150 Hz tone: mean %.2f std %.2f; 120/240 Hz: std %.2f", a.f0->mean_f0_hz, a.f0->std_f0_hz,
                    b.f0->std_f0_hz)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 spectral oracle equivalence", spectral_oracle},
      {"2 frequency accuracy", frequency_accuracy},
      {"3 pause recovery", pause_recovery},
      {"4 gain invariance", gain_invariance},
      {"5 decision rule via CLI", decision_rule},
      {"6 segment invariant fuzz", invariant_fuzz},
      {"7 persistence round trip", persistence},
      {"8 F0 sanity", f0_sanity},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %s  (%s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
