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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pausegate/analysis.hpp"
#include "pausegate/audio.hpp"
#include "pausegate/baseline.hpp"
#include "pausegate/error.hpp"
#include "pausegate/metrics.hpp"
#include "pausegate/pause_detection.hpp"
#include "pausegate/serialize.hpp"
#include "pausegate/spectral.hpp"
#include "pausegate/synth.hpp"

namespace py = pybind11;
using namespace pausegate;

namespace {

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array of samples");
  return std::vector<double>(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// Round-trips through the JSON view so Python sees plain dicts.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_pausegate, m) {
  m.doc() = "Pause-based speech screening: band-limited VAD, pause metrics, baseline decisions";

  static py::exception<Error> error(m, "PausegateError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  py::class_<AudioSignal>(m, "AudioSignal")
      .def(py::init([](const py::array_t<double, py::array::c_style | py::array::forcecast>& s,
                       int rate) { return AudioSignal(to_vector(s), rate); }),
           py::arg("samples"), py::arg("sample_rate_hz"))
      .def_property_readonly("samples", [](const AudioSignal& a) { return to_array(a.samples()); })
      .def_property_readonly("sample_rate_hz", &AudioSignal::sample_rate_hz)
      .def_property_readonly("duration_s", &AudioSignal::duration_s)
      .def("scaled", &AudioSignal::scaled, py::arg("gain"))
      .def("__len__", &AudioSignal::size);

  m.def("load_wav", &load_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("signal"), py::arg("path"));
  m.def("slice", &slice, py::arg("signal"), py::arg("start_s"), py::arg("end_s"));

  py::class_<BandConfig>(m, "BandConfig")
      .def(py::init([](double low, double high) { return BandConfig{low, high}; }),
           py::arg("low_cutoff_hz") = 80.0, py::arg("high_cutoff_hz") = 300.0)
      .def_readwrite("low_cutoff_hz", &BandConfig::low_cutoff_hz)
      .def_readwrite("high_cutoff_hz", &BandConfig::high_cutoff_hz);

  py::enum_<Taper>(m, "Taper")
      .value("RECTANGULAR", Taper::kRectangular)
      .value("HANN", Taper::kHann);

  py::class_<WindowPlan>(m, "WindowPlan")
      .def(py::init([](std::size_t window, std::size_t hop, Taper taper) {
             WindowPlan p{window, hop, taper};
             validate(p);
             return p;
           }),
           py::arg("window_len_samples") = 512, py::arg("hop_len_samples") = 256,
           py::arg("taper") = Taper::kRectangular)
      .def_readwrite("window_len_samples", &WindowPlan::window_len_samples)
      .def_readwrite("hop_len_samples", &WindowPlan::hop_len_samples)
      .def_readwrite("taper", &WindowPlan::taper);
  m.def("default_window_plan", &default_window_plan, py::arg("sample_rate_hz"));

  py::class_<VadConfig>(m, "VadConfig")
      .def(py::init<>())
      .def_readwrite("energy_ratio_threshold", &VadConfig::energy_ratio_threshold)
      .def_readwrite("min_speech_s", &VadConfig::min_speech_s)
      .def_readwrite("min_pause_s", &VadConfig::min_pause_s)
      .def_readwrite("noise_head_s", &VadConfig::noise_head_s)
      .def_readwrite("absolute_floor", &VadConfig::absolute_floor);

  m.def(
      "real_spectrum",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& w, double rate) {
        return to_array(real_spectrum(to_vector(w), rate).magnitudes);
      },
      py::arg("window"), py::arg("sample_rate_hz") = 1.0);
  m.def(
      "band_bins",
      [](const BandConfig& band, double rate, std::size_t m_len) {
        BinRange r = band_bins(band, rate, m_len);
        return py::make_tuple(r.low_bin, r.high_bin);
      },
      py::arg("band"), py::arg("sample_rate_hz"), py::arg("window_len"));
  m.def(
      "max_frequency_in_band",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& w, double rate,
         const BandConfig& band) { return max_frequency_in_band(to_vector(w), rate, band); },
      py::arg("window"), py::arg("sample_rate_hz"), py::arg("band") = BandConfig{});
  m.def(
      "band_energy",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& w, double rate,
         const BandConfig& band) { return band_energy(to_vector(w), rate, band); },
      py::arg("window"), py::arg("sample_rate_hz"), py::arg("band") = BandConfig{});

  m.def(
      "detect_pauses",
      [](const AudioSignal& s, const VadConfig& cfg, const BandConfig& band,
         std::optional<WindowPlan> plan) {
        return to_python(detect_pauses(s, cfg, band, plan.value_or(default_window_plan(s.sample_rate_hz()))));
      },
      py::arg("signal"), py::arg("vad") = VadConfig{}, py::arg("band") = BandConfig{},
      py::arg("plan") = py::none());

  m.def(
      "analyze",
      [](const AudioSignal& s, const BandConfig& band, const VadConfig& vad, double window_ms,
         double hop_ms, std::optional<std::pair<double, double>> noise_segment) {
        AnalysisConfig cfg;
        cfg.band = band;
        cfg.vad = vad;
        cfg.window_ms = window_ms;
        cfg.hop_ms = hop_ms;
        cfg.noise_segment_s = noise_segment;
        return to_python(analysis_report("<memory>", cfg, analyze(s, cfg)));
      },
      py::arg("signal"), py::arg("band") = BandConfig{}, py::arg("vad") = VadConfig{},
      py::arg("window_ms") = 32.0, py::arg("hop_ms") = 16.0, py::arg("noise_segment") = py::none(),
      "Full pipeline; returns the same report document as `pausegate analyze`.");

  m.def(
      "f0_stats",
      [](const std::vector<double>& track) -> py::object {
        auto s = f0_stats(track);
        return s ? to_python(nlohmann::json(*s)) : py::none();
      },
      py::arg("track"));

  m.def(
      "render_script",
      [](const std::string& script_json) {
        synth::Rendered r = synth::render(synth::script_from_json(script_json));
        return py::make_tuple(std::move(r.signal), to_python(nlohmann::json(r.truth)));
      },
      py::arg("script_json"), "Render a synth script (JSON text) to (AudioSignal, truth dict).");

  m.def(
      "decide",
      [](const std::string& store_path, const std::string& speaker_id, const AudioSignal& s,
         double k_sigma, std::size_t min_enrollments) {
        ProfileStore store = load_store_or_empty(store_path);
        const SpeakerProfile* profile = store.find(speaker_id);
        BaselineStats baseline =
            profile && !profile->enrollments.empty() ? baseline_stats(*profile) : BaselineStats{};
        DecisionConfig cfg;
        cfg.k_sigma = k_sigma;
        cfg.min_enrollments = min_enrollments;
        AnalysisConfig acfg;
        AnalysisResult r = analyze(s, acfg);
        return to_python(nlohmann::json(decide(r.metrics, baseline, cfg, r.f0)));
      },
      py::arg("store_path"), py::arg("speaker_id"), py::arg("signal"), py::arg("k_sigma") = 2.0,
      py::arg("min_enrollments") = 3);

  m.def(
      "enroll",
      [](const std::string& store_path, const std::string& speaker_id, const AudioSignal& s,
         std::optional<std::string> recorded_at) {
        AnalysisResult r = analyze(s, AnalysisConfig{});
        SpeakerProfile p = enroll_in_file(store_path, speaker_id, r.metrics, r.f0,
                                          recorded_at.value_or(utc_now_iso8601()));
        return p.enrollments.size();
      },
      py::arg("store_path"), py::arg("speaker_id"), py::arg("signal"),
      py::arg("recorded_at") = py::none(), "Analyze and enroll; returns the enrollment count.");
}
