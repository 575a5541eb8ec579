"""
Spectral Analysis
-----------------

Short-time Fourier magnitudes and mel spectrograms computed with the
frame parameters of :class:`~prosody_toolkit.config.AnalysisConfig`
(22050 Hz, hop 256, frame 1024, 80 mel bands by default).

Frames are Hann-windowed and center-padded by reflection, so frame ``i``
is centered on sample ``i * hop_length`` and a signal of ``n`` samples
yields ``n // hop_length + 1`` frames.  Pitch extraction uses the same
framing, which keeps pitch and energy contours frame-aligned.
"""

from __future__ import annotations

from dataclasses import dataclass

import librosa
import numpy as np

from ..config import AnalysisConfig
from ..errors import EmptySignal
from .wav import AudioBuffer


@dataclass(frozen=True, eq=False)
class SpectrogramFrames:
    """Magnitude spectrogram, one row per frame."""

    magnitudes: np.ndarray  # [num_frames, frame_length // 2 + 1]
    config: AnalysisConfig

    @property
    def num_frames(self) -> int:
        return self.magnitudes.shape[0]


@dataclass(frozen=True, eq=False)
class MelSpectrogram:
    values: np.ndarray  # [num_frames, mel_bands]
    config: AnalysisConfig

    @property
    def num_frames(self) -> int:
        return self.values.shape[0]


def stft_magnitudes(buf: AudioBuffer, cfg: AnalysisConfig) -> SpectrogramFrames:
    if buf.sample_rate != cfg.sample_rate:
        raise ValueError(f"buffer is at {buf.sample_rate} Hz, analysis expects {cfg.sample_rate} Hz")
    if len(buf) == 0:
        raise EmptySignal("cannot compute an STFT of zero samples")
    spec = librosa.stft(
        buf.samples,
        n_fft=cfg.frame_length,
        hop_length=cfg.hop_length,
        win_length=cfg.frame_length,
        window="hann",
        center=True,
        pad_mode="reflect",
    )
    return SpectrogramFrames(np.ascontiguousarray(np.abs(spec).T), cfg)


def mel_filterbank(cfg: AnalysisConfig) -> np.ndarray:
    """Triangular HTK-scale filterbank, shape [mel_bands, num_bins], peak weight 1."""
    return librosa.filters.mel(
        sr=cfg.sample_rate,
        n_fft=cfg.frame_length,
        n_mels=cfg.mel_bands,
        fmin=cfg.fmin,
        fmax=cfg.effective_fmax,
        htk=True,
        norm=None,
    )


def mel_spectrogram(spec: SpectrogramFrames) -> MelSpectrogram:
    basis = mel_filterbank(spec.config)
    return MelSpectrogram(spec.magnitudes @ basis.T, spec.config)


def log_mel(mel: MelSpectrogram, floor: float = 1e-5) -> np.ndarray:
    """Natural-log mel values with a floor, the form TTS training consumes."""
    return np.log(np.maximum(mel.values, floor))


__all__ = [
    "SpectrogramFrames",
    "MelSpectrogram",
    "stft_magnitudes",
    "mel_filterbank",
    "mel_spectrogram",
    "log_mel",
]
