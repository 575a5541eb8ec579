"""
Configuration Loader
--------------------

This module centralises configuration management.  It loads settings
from a YAML file (``settings.yaml`` at the repository root unless
``PROSODY_TOOLKIT_CONFIG`` or an explicit path says otherwise) and
overlays environment variables, including those defined in ``.env``
files.  When a key exists in both places the environment variable takes
precedence.

Two layers are exposed:

``Config``
    Raw dotted-key access (``config.get("analysis.hop_length")``).

``ToolConfig``
    The validated view used by the pipeline, built with
    :meth:`ToolConfig.from_config`.  It nests :class:`AnalysisConfig`, the
    feature-analysis parameters shared by every DSP operation.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError
from .utils.logger import get_logger

CONFIG_ENV_VAR = "PROSODY_TOOLKIT_CONFIG"
DEFAULT_SETTINGS = Path(__file__).parent.parent.parent / "settings.yaml"


class Config:
    """Load YAML and environment based configuration values."""

    def __init__(self, yaml_path: Optional[str | Path] = None) -> None:
        load_dotenv()
        self.logger = get_logger(__name__)

        if yaml_path is None:
            yaml_path = os.getenv(CONFIG_ENV_VAR) or DEFAULT_SETTINGS
        self.yaml_path = Path(yaml_path)

        self.data: dict[str, Any] = {}
        if self.yaml_path.exists():
            try:
                with open(self.yaml_path, "r", encoding="utf-8") as f:
                    self.data = yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"Failed to load YAML config from {self.yaml_path}: {exc}") from exc
        else:
            self.logger.warning("Configuration file %s not found, using defaults", self.yaml_path)

    def get(self, dotted_key: str, default: Any = None) -> Any:
        """Retrieve a configuration value.

        Values are looked up in the environment first, then in the YAML
        structure.  Dotted keys (e.g. `analysis.hop_length`) traverse nested
        dictionaries.  Environment values are parsed as YAML scalars so
        that ``ANALYSIS_HOP_LENGTH=128`` arrives as an integer.
        """
        env_key = dotted_key.upper().replace(".", "_")
        env_val = os.getenv(env_key)
        if env_val is not None:
            return yaml.safe_load(env_val)
        current: Any = self.data
        for part in dotted_key.split("."):
            if isinstance(current, dict) and part in current:
                current = current[part]
            else:
                return default
        return current

    def require(self, dotted_key: str) -> Any:
        """Retrieve a configuration value or raise if missing."""
        value = self.get(dotted_key)
        if value is None:
            raise ConfigError(f"Missing required configuration value: {dotted_key}")
        return value

    def section(self, name: str, fields: list[str]) -> dict[str, Any]:
        """Collect the given fields of one section, honouring env overrides."""
        out: dict[str, Any] = {}
        for field in fields:
            value = self.get(f"{name}.{field}")
            if value is not None:
                out[field] = value
        return out


class AnalysisConfig(BaseModel):
    """Frame analysis parameters shared by STFT, mel, pitch and energy.

    ``fmax`` defaults to the Nyquist frequency when left unset.
    """

    model_config = ConfigDict(frozen=True)

    sample_rate: int = Field(22050, gt=0)
    hop_length: int = Field(256, gt=0)
    frame_length: int = Field(1024, gt=0)
    mel_bands: int = Field(80, gt=0)
    fmin: float = 0.0
    fmax: Optional[float] = None
    pitch_floor: float = 50.0
    pitch_ceiling: float = 600.0
    yin_threshold: float = Field(0.15, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _check_ranges(self) -> "AnalysisConfig":
        nyquist = self.sample_rate / 2
        if self.hop_length > self.frame_length:
            raise ValueError("hop_length must not exceed frame_length")
        fmax = nyquist if self.fmax is None else self.fmax
        if not 0 <= self.fmin < fmax <= nyquist:
            raise ValueError(f"need 0 <= fmin < fmax <= {nyquist}, got fmin={self.fmin}, fmax={fmax}")
        if not 0 < self.pitch_floor < self.pitch_ceiling:
            raise ValueError("need 0 < pitch_floor < pitch_ceiling")
        return self

    @property
    def effective_fmax(self) -> float:
        return self.sample_rate / 2 if self.fmax is None else self.fmax

    @property
    def num_bins(self) -> int:
        return self.frame_length // 2 + 1

    def num_frames(self, num_samples: int) -> int:
        return num_samples // self.hop_length + 1

    def frame_centers(self, num_frames: int) -> np.ndarray:
        """Time in seconds of each frame center (center-padded framing)."""
        return np.arange(num_frames) * self.hop_length / self.sample_rate


class PathsConfig(BaseModel):
    features_dir: Path = Path("work/features")
    utterances_dir: Path = Path("work/utterances")
    alignments_dir: Path = Path("work/alignments")
    manifests_dir: Path = Path("work/manifests")
    output_dir: Path = Path("work/out")


class EvalConfig(BaseModel):
    dtw_normalized: bool = True
    report_format: Literal["tsv", "markdown"] = "tsv"


class SfvConfig(BaseModel):
    zero_sfv: bool = False


class CorpusConfig(BaseModel):
    min_duration: float = Field(1.0, ge=0.0)
    max_duration: float = Field(20.0, gt=0.0)
    seed: int = 0
    split_counts: Optional[tuple[int, int, int]] = None

    @model_validator(mode="after")
    def _check_bounds(self) -> "CorpusConfig":
        if self.min_duration > self.max_duration:
            raise ValueError("min_duration must not exceed max_duration")
        return self


class ToolConfig(BaseModel):
    """Validated configuration for the whole pipeline."""

    analysis: AnalysisConfig = AnalysisConfig()
    paths: PathsConfig = PathsConfig()
    eval: EvalConfig = EvalConfig()
    sfv: SfvConfig = SfvConfig()
    corpus: CorpusConfig = CorpusConfig()
    jobs: int = Field(1, ge=1)

    @classmethod
    def from_config(cls, config: Config, **overrides: Any) -> "ToolConfig":
        """Build from a :class:`Config`; ``overrides`` are dotted keys from CLI flags."""
        raw: dict[str, Any] = {
            "analysis": config.section("analysis", list(AnalysisConfig.model_fields)),
            "paths": config.section("paths", list(PathsConfig.model_fields)),
            "eval": config.section("eval", list(EvalConfig.model_fields)),
            "sfv": config.section("sfv", list(SfvConfig.model_fields)),
            "corpus": config.section("corpus", list(CorpusConfig.model_fields)),
        }
        jobs = config.get("jobs")
        if jobs is not None:
            raw["jobs"] = jobs
        for dotted_key, value in overrides.items():
            if value is None:
                continue
            *parents, leaf = dotted_key.split(".")
            target = raw
            for part in parents:
                target = target.setdefault(part, {})
            target[leaf] = value
        try:
            return cls.model_validate(raw)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, yaml_path: Optional[str | Path] = None, **overrides: Any) -> "ToolConfig":
        return cls.from_config(Config(yaml_path), **overrides)


__all__ = ["Config", "AnalysisConfig", "ToolConfig", "CONFIG_ENV_VAR"]
