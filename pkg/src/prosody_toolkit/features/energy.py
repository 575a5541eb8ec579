"""Frame energy as the L2 norm of each STFT magnitude row."""

from __future__ import annotations

import numpy as np

from ..audio.spectral import SpectrogramFrames
from .contours import EnergyContour


def extract_energy(spec: SpectrogramFrames) -> EnergyContour:
    return EnergyContour(np.linalg.norm(spec.magnitudes, axis=1), spec.config)


__all__ = ["extract_energy"]
