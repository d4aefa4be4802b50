import json

import numpy as np
import pytest

import pausegate


def two_tone_script(pause_s=0.5, freq=150.0):
    return json.dumps({
        "sample_rate_hz": 16000,
        "seed": 3,
        "events": [
            {"kind": "silence", "duration_s": 0.5},
            {"kind": "tone", "freq_hz": freq, "amplitude": 0.7, "duration_s": 1.0},
            {"kind": "silence", "duration_s": pause_s},
            {"kind": "tone", "freq_hz": freq, "amplitude": 0.7, "duration_s": 1.0},
            {"kind": "silence", "duration_s": 0.5},
        ],
    })


def test_render_and_detect():
    signal, truth = pausegate.render_script(two_tone_script())
    assert len(signal) == 56000
    assert signal.sample_rate_hz == 16000
    assert len(truth["segments"]) == 3

    found = pausegate.detect_pauses(signal)
    kinds = [s["kind"] for s in found["segments"]]
    assert kinds == ["speech", "pause", "speech"]


def test_analyze_report():
    signal, _ = pausegate.render_script(two_tone_script())
    report = pausegate.analyze(signal)
    assert report["metrics"]["pause_count"] == 1
    assert report["f0"]["mean_hz"] == pytest.approx(150.0, abs=16000 / 512)
    assert report["config"]["window"]["window_len_samples"] == 512


def test_spectrum():
    rate = 8000.0
    t = np.arange(1024) / rate
    x = np.sin(2 * np.pi * 150.0 * t)
    mags = pausegate.real_spectrum(x, rate)
    assert mags.shape == (513,)
    assert np.allclose(mags, np.abs(np.fft.rfft(x)), rtol=1e-9, atol=1e-9)
    assert pausegate.band_bins(pausegate.BandConfig(), rate, 1024) == (11, 38)
    assert pausegate.max_frequency_in_band(x, rate) == pytest.approx(148.4375)
    assert pausegate.max_frequency_in_band(np.zeros(256), rate) is None


def test_errors_carry_codes():
    with pytest.raises(pausegate.PausegateError) as info:
        pausegate.render_script('{"sample_rate_hz": 16000, "events": []}')
    assert info.value.args[0] == "InvalidScript"
    with pytest.raises(pausegate.PausegateError):
        pausegate.load_wav("/nonexistent/file.wav")


def test_wav_round_trip(tmp_path):
    signal, _ = pausegate.render_script(two_tone_script())
    path = tmp_path / "a.wav"
    pausegate.write_wav(signal, str(path))
    back = pausegate.load_wav(str(path))
    assert len(back) == len(signal)
    assert np.max(np.abs(back.samples - signal.samples)) <= 1.0 / 32768


def test_enroll_and_decide(tmp_path):
    store = str(tmp_path / "profiles.json")
    signal, _ = pausegate.render_script(two_tone_script())
    first = pausegate.decide(store, "alice", signal)
    assert first["verdict"] == "insufficient_data"
    for day in (1, 2, 3):
        n = pausegate.enroll(store, "alice", signal, f"2026-04-0{day}T10:00:00Z")
        assert n == day
    same = pausegate.decide(store, "alice", signal)
    assert same["verdict"] == "sober"

    long_pause, _ = pausegate.render_script(two_tone_script(pause_s=1.5))
    assert pausegate.decide(store, "alice", long_pause)["verdict"] == "intoxicated"

    with pytest.raises(pausegate.PausegateError) as info:
        pausegate.enroll(store, "not valid!", signal)
    assert info.value.args[0] == "InvalidSpeakerId"
