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

#include "pausegate/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "pausegate/error.hpp"

namespace pausegate {

namespace {

// FFTW's planner is not thread-safe but executing an existing plan on new
// arrays is, so plans are created once per length under a lock and then
// shared. FFTW_UNALIGNED keeps the result independent of buffer alignment.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

Spectrum spectrum_of(std::vector<double>& buffer, double sample_rate_hz) {
  const std::size_t n = buffer.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plan_cache().get(n), buffer.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  Spectrum spec;
  spec.window_len = n;
  spec.bin_width_hz = sample_rate_hz / static_cast<double>(n);
  spec.magnitudes.resize(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) spec.magnitudes[k] = std::abs(out[k]);
  return spec;
}

void apply_hann(std::vector<double>& buffer) {
  const double n = static_cast<double>(buffer.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    buffer[i] *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
  }
}

}  // namespace

void validate(const BandConfig& band) {
  if (!(band.low_cutoff_hz > 0.0) || !(band.low_cutoff_hz < band.high_cutoff_hz)) {
    std::ostringstream msg;
    msg << "band [" << band.low_cutoff_hz << ", " << band.high_cutoff_hz
        << "] Hz must satisfy 0 < low < high";
    throw Error(ErrorCode::kInvalidBand, msg.str());
  }
}

WindowPlan default_window_plan(int sample_rate_hz) {
  return window_plan_from_ms(32.0, 16.0, sample_rate_hz);
}

WindowPlan window_plan_from_ms(double window_ms, double hop_ms, int sample_rate_hz, Taper taper) {
  if (!(window_ms > 0.0) || !(hop_ms > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "window and hop durations must be positive");
  }
  WindowPlan plan;
  plan.window_len_samples =
      static_cast<std::size_t>(std::llround(window_ms * sample_rate_hz / 1000.0));
  plan.hop_len_samples = static_cast<std::size_t>(std::llround(hop_ms * sample_rate_hz / 1000.0));
  plan.taper = taper;
  validate(plan);
  return plan;
}

void validate(const WindowPlan& plan) {
  if (plan.window_len_samples < kMinWindowLen) {
    throw Error(ErrorCode::kInvalidConfig,
                "window of " + std::to_string(plan.window_len_samples) +
                    " samples is shorter than " + std::to_string(kMinWindowLen));
  }
  if (plan.hop_len_samples == 0 || plan.hop_len_samples > plan.window_len_samples) {
    throw Error(ErrorCode::kInvalidConfig, "hop must be in [1, window_len]");
  }
}

Spectrum real_spectrum(std::span<const double> window, double sample_rate_hz) {
  if (window.size() < 2) {
    throw Error(ErrorCode::kWindowTooShort, "spectrum needs at least two samples");
  }
  std::vector<double> buffer(window.begin(), window.end());
  return spectrum_of(buffer, sample_rate_hz);
}

BinRange band_bins(const BandConfig& band, double sample_rate_hz, std::size_t window_len) {
  validate(band);
  if (!(band.high_cutoff_hz < sample_rate_hz / 2.0)) {
    std::ostringstream msg;
    msg << "band edge " << band.high_cutoff_hz << " Hz is not below Nyquist ("
        << sample_rate_hz / 2.0 << " Hz)";
    throw Error(ErrorCode::kBandAboveNyquist, msg.str());
  }
  const double m = static_cast<double>(window_len);
  // The 1e-9 slack absorbs rounding in products that are exact integers.
  const double low = std::ceil(band.low_cutoff_hz * m / sample_rate_hz - 1e-9);
  const double high = std::floor(band.high_cutoff_hz * m / sample_rate_hz + 1e-9);
  if (low > high) {
    throw Error(ErrorCode::kEmptyBand, "no spectral bin of a " + std::to_string(window_len) +
                                           "-sample window falls inside the band");
  }
  return {static_cast<std::size_t>(low), static_cast<std::size_t>(high)};
}

double band_energy(const Spectrum& spectrum, BinRange bins) {
  double sum = 0.0;
  for (std::size_t k = bins.low_bin; k <= bins.high_bin; ++k) {
    sum += spectrum.magnitudes[k] * spectrum.magnitudes[k];
  }
  return sum / static_cast<double>(spectrum.window_len);
}

std::optional<double> max_frequency_in_band(const Spectrum& spectrum, BinRange bins) {
  std::size_t best = bins.low_bin;
  for (std::size_t k = bins.low_bin + 1; k <= bins.high_bin; ++k) {
    if (spectrum.magnitudes[k] > spectrum.magnitudes[best]) best = k;
  }
  if (spectrum.magnitudes[best] < 1e-12 * static_cast<double>(spectrum.window_len)) {
    return std::nullopt;
  }
  return spectrum.frequency_of(best);
}

std::optional<double> max_frequency_in_band(std::span<const double> window,
                                            double sample_rate_hz, const BandConfig& band) {
  if (window.size() < 2) {
    throw Error(ErrorCode::kWindowTooShort, "spectrum needs at least two samples");
  }
  BinRange bins = band_bins(band, sample_rate_hz, window.size());
  return max_frequency_in_band(real_spectrum(window, sample_rate_hz), bins);
}

double band_energy(std::span<const double> window, double sample_rate_hz, const BandConfig& band) {
  if (window.size() < 2) {
    throw Error(ErrorCode::kWindowTooShort, "spectrum needs at least two samples");
  }
  BinRange bins = band_bins(band, sample_rate_hz, window.size());
  return band_energy(real_spectrum(window, sample_rate_hz), bins);
}

std::size_t frame_count(std::size_t n_samples, const WindowPlan& plan) {
  if (n_samples < plan.window_len_samples) return 0;
  return (n_samples - plan.window_len_samples) / plan.hop_len_samples + 1;
}

std::vector<FrameFeature> windowed_scan(const AudioSignal& signal, const WindowPlan& plan,
                                        const BandConfig& band) {
  validate(plan);
  const std::size_t frames = frame_count(signal.size(), plan);
  if (frames == 0) {
    throw Error(ErrorCode::kSignalTooShort,
                "signal of " + std::to_string(signal.size()) + " samples is shorter than one " +
                    std::to_string(plan.window_len_samples) + "-sample window");
  }
  const double rate = signal.sample_rate_hz();
  const BinRange bins = band_bins(band, rate, plan.window_len_samples);
  auto samples = signal.samples();

  std::vector<FrameFeature> features;
  features.reserve(frames);
  std::vector<double> buffer(plan.window_len_samples);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::size_t start = i * plan.hop_len_samples;
    std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(start), buffer.size(),
                buffer.begin());
    if (plan.taper == Taper::kHann) apply_hann(buffer);
    Spectrum spec = spectrum_of(buffer, rate);
    features.push_back({static_cast<double>(start) / rate, band_energy(spec, bins),
                        max_frequency_in_band(spec, bins)});
  }
  return features;
}

}  // namespace pausegate
