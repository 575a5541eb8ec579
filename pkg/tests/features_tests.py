"""
Feature Tests
-------------

Pitch accuracy on pure tones, the energy definition, corpus
normalization and phoneme averaging, plus the feature file formats.
"""

import os
import sys

import allure
import numpy as np
import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.prosody_toolkit.audio import AudioBuffer, stft_magnitudes  # noqa: E402
from src.prosody_toolkit.config import AnalysisConfig  # noqa: E402
from src.prosody_toolkit.errors import (  # noqa: E402
    DurationMismatch,
    EmptySignal,
    KindMismatch,
    NegativeDuration,
    NoValues,
    SchemaError,
)
from src.prosody_toolkit.features import (  # noqa: E402
    EnergyContour,
    FeatureKind,
    NormStats,
    PitchContour,
    extract_energy,
    extract_features,
    extract_pitch,
    fit_norm_stats,
    load_feature_record,
    load_norm_stats,
    load_phoneme_values,
    phoneme_average,
    save_feature_record,
    save_norm_stats,
    save_phoneme_values,
    z_normalize,
)
from src.prosody_toolkit.utils.jsonio import read_json, write_json  # noqa: E402

FORMATS_DOC = os.path.join(os.path.dirname(__file__), "..", "docs", "file_formats.md")


@pytest.fixture(scope="module")
def cfg() -> AnalysisConfig:
    return AnalysisConfig()


def tone(freq: float, cfg: AnalysisConfig, seconds: float = 1.0, amplitude: float = 0.5) -> AudioBuffer:
    t = np.arange(int(seconds * cfg.sample_rate)) / cfg.sample_rate
    return AudioBuffer(amplitude * np.sin(2 * np.pi * freq * t), cfg.sample_rate)


@pytest.mark.parametrize("freq", [110.0, 220.0, 330.0, 440.0])
def test_pitch_tracks_pure_tones(cfg: AnalysisConfig, freq: float) -> None:
    contour = extract_pitch(tone(freq, cfg), cfg)
    assert len(contour) == cfg.sample_rate // cfg.hop_length + 1
    accurate = contour.voiced & (np.abs(contour.f0 - freq) <= 3.0)
    assert accurate.mean() >= 0.9


@pytest.mark.parametrize("freq", [80.0, 500.0])
def test_pitch_median_at_range_edges(cfg: AnalysisConfig, freq: float) -> None:
    contour = extract_pitch(tone(freq, cfg), cfg)
    assert contour.voiced.mean() >= 0.9
    median = np.median(contour.f0[contour.voiced])
    assert abs(median - freq) <= 0.03 * freq


def test_pitch_of_silence_is_unvoiced(cfg: AnalysisConfig) -> None:
    contour = extract_pitch(AudioBuffer(np.zeros(cfg.sample_rate), cfg.sample_rate), cfg)
    assert not contour.voiced.any()
    assert np.all(contour.f0 == 0.0)


def test_pitch_rejects_empty_signal(cfg: AnalysisConfig) -> None:
    with pytest.raises(EmptySignal):
        extract_pitch(AudioBuffer(np.zeros(0), cfg.sample_rate), cfg)


def test_energy_is_l2_norm_of_magnitudes(cfg: AnalysisConfig) -> None:
    rng = np.random.default_rng(3)
    spec = stft_magnitudes(AudioBuffer(rng.uniform(-1, 1, 5000), cfg.sample_rate), cfg)
    energy = extract_energy(spec)
    oracle = np.sqrt(np.sum(spec.magnitudes**2, axis=1))
    np.testing.assert_allclose(energy.values, oracle, rtol=1e-12)


def test_energy_of_unit_rows() -> None:
    from src.prosody_toolkit.audio.spectral import SpectrogramFrames

    cfg = AnalysisConfig()
    spec = SpectrogramFrames(np.ones((3, cfg.num_bins)), cfg)
    np.testing.assert_array_equal(extract_energy(spec).values, np.full(3, np.sqrt(cfg.num_bins)))


def test_extract_features_aligns_pitch_and_energy(cfg: AnalysisConfig) -> None:
    record = extract_features(tone(220.0, cfg, seconds=0.5), cfg, "utt1")
    assert record.utterance_id == "utt1"
    assert len(record.pitch) == len(record.energy) == int(0.5 * cfg.sample_rate) // cfg.hop_length + 1


def test_extract_features_resamples_input(cfg: AnalysisConfig) -> None:
    t = np.arange(44100 // 2) / 44100.0
    buf = AudioBuffer(0.5 * np.sin(2 * np.pi * 220.0 * t), 44100)
    record = extract_features(buf, cfg, "hi-rate")
    assert len(record.pitch) == (44100 // 4) // cfg.hop_length + 1
    voiced = record.pitch.f0[record.pitch.voiced]
    assert abs(np.median(voiced) - 220.0) <= 3.0


def _contours(cfg: AnalysisConfig, seed: int = 11) -> list[PitchContour]:
    rng = np.random.default_rng(seed)
    contours = []
    for _ in range(5):
        n = int(rng.integers(20, 60))
        voiced = rng.random(n) < 0.7
        f0 = np.where(voiced, rng.uniform(80.0, 300.0, n), 0.0)
        contours.append(PitchContour(f0, voiced, cfg))
    return contours


def test_normalizing_own_pool_gives_zero_mean_unit_std(cfg: AnalysisConfig) -> None:
    contours = _contours(cfg)
    with allure.step("Fit pitch statistics"):
        stats = fit_norm_stats(contours, FeatureKind.PITCH)
    assert stats.count == sum(int(c.voiced.sum()) for c in contours)
    pooled = np.concatenate([z_normalize(c, stats).pooled_values for c in contours])
    assert abs(pooled.mean()) <= 1e-9
    assert abs(pooled.std() - 1.0) <= 1e-9


def test_normalization_keeps_unvoiced_frames_at_zero(cfg: AnalysisConfig) -> None:
    contour = PitchContour([0.0, 100.0, 200.0, 0.0], [False, True, True, False], cfg)
    normalized = z_normalize(contour, fit_norm_stats([contour], "pitch"))
    assert normalized.normalized
    np.testing.assert_allclose(normalized.values, [0.0, -1.0, 1.0, 0.0])


def test_constant_pool_degenerates_to_zeros(cfg: AnalysisConfig) -> None:
    energy = EnergyContour(np.full(10, 3.5), cfg)
    stats = fit_norm_stats([energy], FeatureKind.ENERGY)
    assert stats.degenerate
    np.testing.assert_array_equal(z_normalize(energy, stats).values, np.zeros(10))


def test_fit_rejects_empty_pool_and_wrong_kind(cfg: AnalysisConfig) -> None:
    unvoiced = PitchContour(np.zeros(5), np.zeros(5, dtype=bool), cfg)
    with pytest.raises(NoValues):
        fit_norm_stats([unvoiced], FeatureKind.PITCH)
    with pytest.raises(NoValues):
        fit_norm_stats([], FeatureKind.ENERGY)
    with pytest.raises(KindMismatch):
        fit_norm_stats([unvoiced], FeatureKind.ENERGY)
    stats = NormStats(FeatureKind.ENERGY, 1.0, 1.0, 3)
    with pytest.raises(KindMismatch):
        z_normalize(unvoiced, stats)


def test_phoneme_average_over_spans(cfg: AnalysisConfig) -> None:
    energy = EnergyContour([1.0, 2.0, 3.0, 4.0, 5.0, 6.0], cfg, normalized=True)
    values = phoneme_average(energy, [2, 0, 4])
    np.testing.assert_allclose(values.values, [1.5, 0.0, 4.5])
    np.testing.assert_array_equal(values.support, [2, 0, 4])


def test_phoneme_average_uses_voiced_frames_only(cfg: AnalysisConfig) -> None:
    pitch = PitchContour([0.0, 1.0, 3.0, 0.0, 0.0], [False, True, True, False, False], cfg, normalized=True)
    values = phoneme_average(pitch, [3, 2])
    np.testing.assert_allclose(values.values, [2.0, 0.0])
    np.testing.assert_array_equal(values.support, [2, 0])


def test_phoneme_average_reaverages_to_global_voiced_mean(cfg: AnalysisConfig) -> None:
    rng = np.random.default_rng(2024)
    for trial in range(100):
        durations = rng.integers(0, 6, size=int(rng.integers(1, 15)))
        durations[0] += 1
        n = int(durations.sum())
        voiced = rng.random(n) < 0.6
        voiced[int(rng.integers(0, n))] = True
        f0 = np.where(voiced, rng.uniform(80.0, 400.0, size=n), 0.0)
        values = phoneme_average(PitchContour(f0, voiced, cfg), durations)
        with allure.step(f"Trial {trial}: weight phoneme means by voiced support"):
            pooled = np.sum(values.values * values.support) / np.sum(values.support)
        assert abs(pooled - f0[voiced].mean()) <= 1e-9, f"trial {trial}"
        assert np.all(values.values[values.support == 0] == 0.0)


def test_phoneme_average_rejects_bad_durations(cfg: AnalysisConfig) -> None:
    energy = EnergyContour(np.zeros(4), cfg, normalized=True)
    with pytest.raises(DurationMismatch):
        phoneme_average(energy, [1, 2])
    with pytest.raises(NegativeDuration):
        phoneme_average(energy, [5, -1])


def test_feature_files_round_trip(cfg: AnalysisConfig, tmp_path) -> None:
    record = extract_features(tone(330.0, cfg, seconds=0.3), cfg, "utt7")
    save_feature_record(tmp_path / "utt7.json", record)
    loaded = load_feature_record(tmp_path / "utt7.json")
    assert loaded.utterance_id == "utt7"
    assert loaded.config == cfg
    np.testing.assert_array_equal(loaded.pitch.f0, record.pitch.f0)
    np.testing.assert_array_equal(loaded.pitch.voiced, record.pitch.voiced)
    np.testing.assert_array_equal(loaded.energy.values, record.energy.values)

    stats = NormStats(FeatureKind.PITCH, 180.5, 32.25, 1234)
    save_norm_stats(tmp_path / "pitch_stats.json", stats)
    assert load_norm_stats(tmp_path / "pitch_stats.json") == stats

    pitch = phoneme_average(z_normalize(record.pitch, fit_norm_stats([record.pitch], "pitch")), [len(record.pitch)])
    energy = phoneme_average(
        z_normalize(record.energy, fit_norm_stats([record.energy], "energy")), [len(record.energy)]
    )
    save_phoneme_values(tmp_path / "pv.json", "utt7", pitch, energy)
    uid, pitch_back, energy_back = load_phoneme_values(tmp_path / "pv.json")
    assert uid == "utt7"
    np.testing.assert_array_equal(pitch_back.support, pitch.support)
    np.testing.assert_array_equal(energy_back.values, energy.values)

    with open(FORMATS_DOC, "r", encoding="utf-8") as f:
        reference = f.read()
    for name in ("utt7.json", "pitch_stats.json", "pv.json"):
        for key in read_json(tmp_path / name):
            assert f"`{key}`" in reference, f"{name}: field {key!r} missing from the format reference"


def test_feature_file_schema_errors(tmp_path) -> None:
    write_json(tmp_path / "bad.json", {"utterance_id": "x", "config": {}, "f0": [0.0], "voiced": [], "energy": [1.0]})
    with pytest.raises(SchemaError):
        load_feature_record(tmp_path / "bad.json")
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        load_feature_record(tmp_path / "broken.json")
    write_json(tmp_path / "stats.json", {"kind": "loudness", "mean": 0, "std": 1, "count": 1})
    with pytest.raises(SchemaError):
        load_norm_stats(tmp_path / "stats.json")
