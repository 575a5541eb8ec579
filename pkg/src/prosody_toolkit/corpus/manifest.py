"""
Manifests and Splits
--------------------

A manifest is a UTF-8 TSV with LF line endings and the header::

    id  path  language  speaker  duration_s  text  [book]

``book`` is optional; when present, speakers are counted per book.  An
empty ``text`` cell means the transcript is missing.

Splits shuffle records by ``sha256(f"{seed}:{id}")`` so that a record's
position depends only on the seed and its own id, then cut the shuffled
order into train/val/test.  Each part keeps the manifest's own order.
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

import pandas as pd

from ..errors import BadSpec, SchemaError
from ..utils.jsonio import write_json
from ..utils.logger import get_logger

logger = get_logger(__name__)

COLUMNS = ("id", "path", "language", "speaker", "duration_s", "text")
SPLIT_NAMES = ("train", "val", "test")


@dataclass(frozen=True)
class ManifestRecord:
    id: str
    path: str
    language: str
    speaker: str
    duration_s: float
    text: Optional[str] = None
    book: Optional[str] = None

    def __post_init__(self) -> None:
        for name in ("id", "path", "language", "speaker", "text", "book"):
            value = getattr(self, name)
            if value is not None and ("\t" in value or "\n" in value):
                raise SchemaError(f"{self.id}: field {name!r} contains a tab or newline")
        if not self.duration_s > 0:
            raise SchemaError(f"{self.id}: duration must be positive, got {self.duration_s}")


@dataclass(frozen=True)
class Manifest:
    records: tuple[ManifestRecord, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for record in self.records:
            if record.id in seen:
                raise SchemaError(f"duplicate utterance id {record.id!r}")
            seen.add(record.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ManifestRecord]:
        return iter(self.records)

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    @property
    def has_books(self) -> bool:
        return any(r.book is not None for r in self.records)

    @property
    def total_seconds(self) -> float:
        return math.fsum(r.duration_s for r in self.records)

    def to_frame(self) -> pd.DataFrame:
        columns = list(COLUMNS) + (["book"] if self.has_books else [])
        rows = [
            {
                "id": r.id,
                "path": r.path,
                "language": r.language,
                "speaker": r.speaker,
                "duration_s": r.duration_s,
                "text": r.text or "",
                "book": r.book or "",
            }
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=columns)


def read_manifest(path: str | Path) -> Manifest:
    try:
        frame = pd.read_csv(
            path,
            sep="\t",
            dtype=str,
            keep_default_na=False,
            quoting=csv.QUOTE_NONE,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path}: manifest has no header") from None
    missing = [c for c in COLUMNS if c not in frame.columns]
    if missing:
        raise SchemaError(f"{path}: manifest lacks columns {', '.join(missing)}")

    records = []
    for lineno, data in enumerate(frame.to_dict("records"), start=2):
        try:
            duration = float(data["duration_s"])
        except ValueError:
            raise SchemaError(f"{path}:{lineno}: duration {data['duration_s']!r} is not a number") from None
        records.append(
            ManifestRecord(
                id=data["id"],
                path=data["path"],
                language=data["language"],
                speaker=data["speaker"],
                duration_s=duration,
                text=data["text"] or None,
                book=data.get("book") or None,
            )
        )
    return Manifest(tuple(records))


def write_manifest(path: str | Path, man: Manifest) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    man.to_frame().to_csv(
        path,
        sep="\t",
        index=False,
        encoding="utf-8",
        lineterminator="\n",
        quoting=csv.QUOTE_NONE,
    )


def duration_filter(man: Manifest, min_s: float = 1.0, max_s: float = 20.0) -> Manifest:
    """Keep records with ``min_s <= duration <= max_s``."""
    kept = tuple(r for r in man if min_s <= r.duration_s <= max_s)
    logger.info("Duration filter [%.2f, %.2f] s kept %d of %d records", min_s, max_s, len(kept), len(man))
    return Manifest(kept)


@dataclass(frozen=True)
class SplitSpec:
    """Train/val/test sizes, given either as counts or as ratios."""

    counts: Optional[tuple[int, int, int]] = None
    ratios: Optional[tuple[float, float, float]] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if (self.counts is None) == (self.ratios is None):
            raise BadSpec("give exactly one of counts or ratios")
        if self.counts is not None:
            if len(self.counts) != 3 or any(c < 0 for c in self.counts):
                raise BadSpec(f"counts must be three nonnegative integers, got {self.counts}")
            object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        else:
            if len(self.ratios) != 3 or any(r < 0 for r in self.ratios):
                raise BadSpec(f"ratios must be three nonnegative numbers, got {self.ratios}")
            if abs(math.fsum(self.ratios) - 1.0) > 1e-9:
                raise BadSpec(f"ratios {self.ratios} do not sum to 1")
            object.__setattr__(self, "ratios", tuple(float(r) for r in self.ratios))

    def resolve(self, total: int) -> tuple[int, int, int]:
        if self.counts is not None:
            if sum(self.counts) != total:
                raise BadSpec(f"split counts {self.counts} sum to {sum(self.counts)}, manifest has {total} records")
            return self.counts
        train = math.floor(self.ratios[0] * total)
        val = math.floor(self.ratios[1] * total)
        return train, val, total - train - val


def _shuffle_key(seed: int, utterance_id: str) -> str:
    return hashlib.sha256(f"{seed}:{utterance_id}".encode("utf-8")).hexdigest()


def split_manifest(man: Manifest, spec: SplitSpec) -> tuple[Manifest, Manifest, Manifest]:
    n_train, n_val, _ = spec.resolve(len(man))
    shuffled = sorted(man.ids, key=lambda uid: _shuffle_key(spec.seed, uid))
    assignment = {}
    for position, uid in enumerate(shuffled):
        if position < n_train:
            assignment[uid] = 0
        elif position < n_train + n_val:
            assignment[uid] = 1
        else:
            assignment[uid] = 2
    parts = tuple(Manifest(tuple(r for r in man if assignment[r.id] == k)) for k in range(3))
    logger.info("Split %d records into %s with seed %d", len(man), "/".join(str(len(p)) for p in parts), spec.seed)
    return parts


def write_split(out_dir: str | Path, parts: Iterable[Manifest], spec: SplitSpec) -> None:
    """Write ``train.tsv``, ``val.tsv``, ``test.tsv`` and a ``split.json`` sidecar."""
    out_dir = Path(out_dir)
    parts = tuple(parts)
    for name, part in zip(SPLIT_NAMES, parts):
        write_manifest(out_dir / f"{name}.tsv", part)
    sidecar = {"seed": spec.seed, "counts": {name: len(part) for name, part in zip(SPLIT_NAMES, parts)}}
    if spec.ratios is not None:
        sidecar["ratios"] = dict(zip(SPLIT_NAMES, spec.ratios))
    write_json(out_dir / "split.json", sidecar)


__all__ = [
    "COLUMNS",
    "SPLIT_NAMES",
    "ManifestRecord",
    "Manifest",
    "read_manifest",
    "write_manifest",
    "duration_filter",
    "SplitSpec",
    "split_manifest",
    "write_split",
]
