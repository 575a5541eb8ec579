"""
WAV Decoding and Resampling
---------------------------

Mono audio buffers are the raw material of every analysis in the
toolkit.  This module reads RIFF/WAVE containers holding 16-bit PCM,
downmixes multi-channel input by channel mean, writes buffers back out,
and resamples with a polyphase windowed-sinc filter.
"""

from __future__ import annotations

import io
import struct
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

from ..errors import MalformedHeader, UnsupportedEncoding
from ..utils.logger import get_logger

logger = get_logger(__name__)

PCM16_SCALE = 32768.0
# scipy reports non-PCM formats and odd bit depths through ValueError messages
_ENCODING_MARKERS = ("Unknown wave file format", "Unsupported bit depth")


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Mono waveform in [-1, 1] plus its sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"AudioBuffer expects mono samples, got shape {samples.shape}")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("AudioBuffer samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate


def decode_wav(data: bytes) -> AudioBuffer:
    """Decode a PCM-16 RIFF/WAVE byte string into a mono buffer."""
    try:
        with warnings.catch_warnings():
            # a short data chunk only warns; treat it as a truncated file
            warnings.filterwarnings("error", "Reached EOF prematurely", wavfile.WavFileWarning)
            rate, pcm = wavfile.read(io.BytesIO(data))
    except wavfile.WavFileWarning as exc:
        raise MalformedHeader(f"truncated RIFF/WAVE container: {exc}") from exc
    except ValueError as exc:
        if any(marker in str(exc) for marker in _ENCODING_MARKERS):
            raise UnsupportedEncoding(f"unsupported WAVE encoding: {exc}") from exc
        raise MalformedHeader(f"not a readable RIFF/WAVE container: {exc}") from exc
    except (EOFError, struct.error, IndexError) as exc:
        raise MalformedHeader(f"not a readable RIFF/WAVE container: {exc}") from exc
    if pcm.dtype != np.int16:
        raise UnsupportedEncoding(f"expected 16-bit PCM samples, got {pcm.dtype}")
    samples = pcm.astype(np.float64) / PCM16_SCALE
    if samples.ndim == 2:
        logger.debug("Downmixing %d channels by mean", samples.shape[1])
        samples = samples.mean(axis=1)
    return AudioBuffer(samples, rate)


def encode_wav(buf: AudioBuffer) -> bytes:
    """Encode a buffer as mono PCM-16; values are clipped to the PCM range."""
    pcm = np.clip(np.round(buf.samples * PCM16_SCALE), -32768, 32767).astype(np.int16)
    out = io.BytesIO()
    wavfile.write(out, buf.sample_rate, pcm)
    return out.getvalue()


def read_wav(path: str | Path) -> AudioBuffer:
    return decode_wav(Path(path).read_bytes())


def write_wav(path: str | Path, buf: AudioBuffer) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_wav(buf))


def resample(buf: AudioBuffer, target_rate: int) -> AudioBuffer:
    """Band-limited resampling to ``target_rate``.

    Uses the rational ratio target/source reduced to lowest terms and a
    Kaiser-windowed sinc polyphase filter.  The output holds
    ceil(n * target / source) samples, so durations agree within one
    sample.
    """
    if target_rate <= 0:
        raise ValueError(f"target_rate must be positive, got {target_rate}")
    if target_rate == buf.sample_rate:
        return buf
    if len(buf) == 0:
        return AudioBuffer(np.zeros(0), target_rate)
    ratio = Fraction(int(target_rate), buf.sample_rate)
    out = resample_poly(buf.samples, ratio.numerator, ratio.denominator)
    return AudioBuffer(np.clip(out, -1.0, 1.0), target_rate)


__all__ = [
    "AudioBuffer",
    "decode_wav",
    "encode_wav",
    "read_wav",
    "write_wav",
    "resample",
]
