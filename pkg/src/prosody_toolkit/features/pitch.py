"""
Pitch Extraction
----------------

YIN-style F0 estimation.  Each analysis frame (same centers as the STFT)
is compared with lagged copies of itself through the squared-difference
function, which is turned into the cumulative-mean-normalized difference
(CMND).  The period is the first lag inside the configured pitch range
whose CMND dips below ``yin_threshold``, followed down to its local
minimum and refined by parabolic interpolation.  Frames without such a dip
are unvoiced.
"""

from __future__ import annotations

import math

import librosa
import numpy as np

from ..config import AnalysisConfig
from ..errors import EmptySignal
from ..audio.wav import AudioBuffer
from .contours import PitchContour


def _difference_function(frames: np.ndarray, window: int, max_lag: int) -> np.ndarray:
    """Squared difference d(tau) for tau in [0, max_lag], one row per frame.

    d(tau) = sum_{j<W} (x_j - x_{j+tau})^2, expanded into two energy terms
    and an FFT cross-correlation.
    """
    n_frames, frame_length = frames.shape
    size = 1 << int(math.ceil(math.log2(frame_length + window)))
    head = np.fft.rfft(frames[:, :window], size, axis=1)
    full = np.fft.rfft(frames, size, axis=1)
    corr = np.fft.irfft(np.conj(head) * full, size, axis=1)[:, : max_lag + 1]

    cumsum = np.concatenate([np.zeros((n_frames, 1)), np.cumsum(frames * frames, axis=1)], axis=1)
    lags = np.arange(max_lag + 1)
    energy_head = cumsum[:, [window]]
    energy_lag = cumsum[:, lags + window] - cumsum[:, lags]
    return np.maximum(energy_head + energy_lag - 2.0 * corr, 0.0)


def _cumulative_mean_normalized(diff: np.ndarray) -> np.ndarray:
    """d'(0) = 1, d'(tau) = d(tau) * tau / sum_{k=1..tau} d(k); silent frames give 1."""
    cmnd = np.ones_like(diff)
    running = np.cumsum(diff[:, 1:], axis=1)
    lags = np.arange(1, diff.shape[1])
    tiny = np.finfo(np.float64).tiny
    np.divide(diff[:, 1:] * lags, running, out=cmnd[:, 1:], where=running > tiny)
    return cmnd


def _pick_period(cmnd: np.ndarray, min_lag: int, max_lag: int, threshold: float) -> float | None:
    """Absolute-threshold dip search on one frame; returns a fractional lag or None."""
    region = cmnd[min_lag : max_lag + 1]
    below = np.flatnonzero(region < threshold)
    if below.size == 0:
        return None
    idx = int(below[0])
    while idx + 1 < region.size and region[idx + 1] < region[idx]:
        idx += 1
    lag = min_lag + idx
    if 0 < lag < cmnd.size - 1:
        y0, y1, y2 = cmnd[lag - 1], cmnd[lag], cmnd[lag + 1]
        curvature = y0 + y2 - 2.0 * y1
        if curvature > 0:
            shift = 0.5 * (y0 - y2) / curvature
            return lag + float(np.clip(shift, -1.0, 1.0))
    return float(lag)


def extract_pitch(buf: AudioBuffer, cfg: AnalysisConfig) -> PitchContour:
    if buf.sample_rate != cfg.sample_rate:
        raise ValueError(f"buffer is at {buf.sample_rate} Hz, analysis expects {cfg.sample_rate} Hz")
    if len(buf) == 0:
        raise EmptySignal("cannot extract pitch from zero samples")

    frame_length = cfg.frame_length
    window = frame_length // 2
    min_lag = max(2, int(math.floor(cfg.sample_rate / cfg.pitch_ceiling)))
    max_lag = min(int(math.ceil(cfg.sample_rate / cfg.pitch_floor)), frame_length - window)

    padded = np.pad(buf.samples, frame_length // 2, mode="reflect")
    frames = librosa.util.frame(padded, frame_length=frame_length, hop_length=cfg.hop_length).T
    cmnd = _cumulative_mean_normalized(_difference_function(np.ascontiguousarray(frames), window, max_lag))

    f0 = np.zeros(frames.shape[0])
    voiced = np.zeros(frames.shape[0], dtype=bool)
    for i in range(frames.shape[0]):
        period = _pick_period(cmnd[i], min_lag, max_lag, cfg.yin_threshold)
        if period is None:
            continue
        freq = cfg.sample_rate / period
        if cfg.pitch_floor <= freq <= cfg.pitch_ceiling:
            f0[i] = freq
            voiced[i] = True
    return PitchContour(f0, voiced, cfg)


__all__ = ["extract_pitch"]
