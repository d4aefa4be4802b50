"""Pause-based speech screening against a per-speaker sober baseline."""

from ._pausegate import (
    AudioSignal,
    BandConfig,
    PausegateError,
    Taper,
    VadConfig,
    WindowPlan,
    analyze,
    band_bins,
    band_energy,
    decide,
    default_window_plan,
    detect_pauses,
    enroll,
    f0_stats,
    load_wav,
    max_frequency_in_band,
    real_spectrum,
    render_script,
    slice,
    write_wav,
)

__all__ = [
    "AudioSignal",
    "BandConfig",
    "PausegateError",
    "Taper",
    "VadConfig",
    "WindowPlan",
    "analyze",
    "band_bins",
    "band_energy",
    "decide",
    "default_window_plan",
    "detect_pauses",
    "enroll",
    "f0_stats",
    "load_wav",
    "max_frequency_in_band",
    "real_spectrum",
    "render_script",
    "slice",
    "write_wav",
]
