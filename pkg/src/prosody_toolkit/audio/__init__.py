"""Audio decoding, resampling and spectral analysis."""

from .spectral import (
    MelSpectrogram,
    SpectrogramFrames,
    log_mel,
    mel_filterbank,
    mel_spectrogram,
    stft_magnitudes,
)
from .wav import AudioBuffer, decode_wav, encode_wav, read_wav, resample, write_wav

__all__ = [
    "AudioBuffer",
    "decode_wav",
    "encode_wav",
    "read_wav",
    "write_wav",
    "resample",
    "SpectrogramFrames",
    "MelSpectrogram",
    "stft_magnitudes",
    "mel_filterbank",
    "mel_spectrogram",
    "log_mel",
]
