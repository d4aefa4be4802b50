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
#include <optional>
#include <span>
#include <vector>

#include "pausegate/audio.hpp"

namespace pausegate {

// Analysis band. Defaults are the voiced-pitch range the detector listens to.
struct BandConfig {
  double low_cutoff_hz = 80.0;
  double high_cutoff_hz = 300.0;

  friend bool operator==(const BandConfig&, const BandConfig&) = default;
};

// Throws kInvalidBand unless 0 < low < high.
void validate(const BandConfig& band);

struct Spectrum {
  std::vector<double> magnitudes;  // |X_k|, k = 0 .. M/2
  std::size_t window_len = 0;      // M
  double bin_width_hz = 0.0;       // sample_rate / M

  double frequency_of(std::size_t bin) const { return static_cast<double>(bin) * bin_width_hz; }
};

enum class Taper { kRectangular, kHann };

struct WindowPlan {
  std::size_t window_len_samples = 512;
  std::size_t hop_len_samples = 256;
  Taper taper = Taper::kRectangular;

  friend bool operator==(const WindowPlan&, const WindowPlan&) = default;
};

inline constexpr std::size_t kMinWindowLen = 64;

// 32 ms window, 16 ms hop at the given rate.
WindowPlan default_window_plan(int sample_rate_hz);

// Plan from millisecond durations, rounded to whole samples.
WindowPlan window_plan_from_ms(double window_ms, double hop_ms, int sample_rate_hz,
                               Taper taper = Taper::kRectangular);

// Throws kInvalidConfig unless window >= kMinWindowLen and 0 < hop <= window.
void validate(const WindowPlan& plan);

struct BinRange {
  std::size_t low_bin = 0;
  std::size_t high_bin = 0;  // inclusive

  friend bool operator==(const BinRange&, const BinRange&) = default;
};

// Magnitude of the real-input DFT of `window` (no taper applied).
// Throws kWindowTooShort for fewer than two samples.
Spectrum real_spectrum(std::span<const double> window, double sample_rate_hz = 1.0);

// Bins lying inside [low_cutoff, high_cutoff]: ceil(low*M/rate) .. floor(high*M/rate).
// The band is never widened by rounding.
BinRange band_bins(const BandConfig& band, double sample_rate_hz, std::size_t window_len);

// Band energy of an already computed spectrum: sum of |X_k|^2 over the
// band bins, divided by the window length.
double band_energy(const Spectrum& spectrum, BinRange bins);

// Frequency of the largest band magnitude, lowest bin on ties; nullopt when
// every band magnitude is below 1e-12 * M.
std::optional<double> max_frequency_in_band(const Spectrum& spectrum, BinRange bins);

std::optional<double> max_frequency_in_band(std::span<const double> window,
                                            double sample_rate_hz,
                                            const BandConfig& band = {});

double band_energy(std::span<const double> window, double sample_rate_hz,
                   const BandConfig& band = {});

struct FrameFeature {
  double start_s = 0.0;
  double band_energy = 0.0;
  std::optional<double> max_freq_hz;
};

// Number of whole windows the plan fits into n samples (0 if none).
std::size_t frame_count(std::size_t n_samples, const WindowPlan& plan);

// One feature per hop position; a trailing partial window is discarded.
// Throws kSignalTooShort when the signal is shorter than one window.
std::vector<FrameFeature> windowed_scan(const AudioSignal& signal, const WindowPlan& plan,
                                        const BandConfig& band = {});

}  // namespace pausegate
