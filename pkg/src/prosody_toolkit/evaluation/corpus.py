"""
Corpus Evaluation
-----------------

Compares each generated system against ground truth over a test set:

* pitch moments over the voiced frames pooled across all utterances;
* DTW pitch distance per utterance, averaged over utterances;
* energy MAE per utterance, averaged over utterances.

The ground-truth row only carries moments.  Rows are GT first, then
systems in lexicographic order, and utterances are visited in sorted id
order with ``math.fsum`` accumulation, so the report does not depend on
how the inputs were ordered or how many workers computed them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

import numpy as np
import pandas as pd

from ..errors import EmptySystem, MissingUtterance, SchemaError, UtteranceFailures
from ..executor import BatchExecutor
from ..features.records import FeatureRecord
from ..utils.logger import get_logger
from .metrics import PitchMoments, dtw_pitch_distance, energy_mae, pitch_moments

logger = get_logger(__name__)

GT_SYSTEM = "GT"


@dataclass(frozen=True)
class EvalRow:
    system: str
    pitch_moments: PitchMoments
    pitch_dtw: Optional[float] = None
    energy_mae: Optional[float] = None
    mos: Optional[float] = None

    @property
    def is_reference(self) -> bool:
        return self.pitch_dtw is None and self.energy_mae is None


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]
    dtw_normalized: bool = True

    @property
    def reference(self) -> EvalRow:
        return self.rows[0]

    @property
    def systems(self) -> tuple[EvalRow, ...]:
        return self.rows[1:]

    @property
    def has_mos(self) -> bool:
        return any(row.mos is not None for row in self.rows)

    def row(self, system: str) -> EvalRow:
        for row in self.rows:
            if row.system == system:
                return row
        raise KeyError(system)


def _pooled_f0(records: Mapping[str, FeatureRecord]) -> np.ndarray:
    ids = sorted(records)
    if not ids:
        return np.zeros(0)
    return np.concatenate([records[uid].pitch.pooled_values for uid in ids])


def _utterance_metrics(gt: FeatureRecord, gen: FeatureRecord, normalized: bool) -> tuple[float, float]:
    return (
        dtw_pitch_distance(gt.pitch, gen.pitch, normalized=normalized),
        energy_mae(gt.energy, gen.energy),
    )


def evaluate_corpus(
    gt_set: Mapping[str, FeatureRecord],
    gen_sets: Mapping[str, Mapping[str, FeatureRecord]],
    normalized: bool = True,
    mos: Optional[Mapping[str, float]] = None,
    executor: Optional[BatchExecutor] = None,
) -> EvalReport:
    """Build the GT row and one row per generated system.

    Per-utterance metrics run on ``executor`` when one is given.  Every
    system is still attempted after a failure; the failures of all of them
    are raised together as ``UtteranceFailures``.
    """
    mos = mos or {}
    for system in sorted(gen_sets):
        records = gen_sets[system]
        if not records:
            raise EmptySystem(f"system {system!r} has no utterances")
        missing = sorted(set(records) - set(gt_set))
        if missing:
            raise MissingUtterance(f"system {system!r}: no ground truth for {', '.join(missing)}")

    rows = [EvalRow(GT_SYSTEM, pitch_moments(_pooled_f0(gt_set)), mos=mos.get(GT_SYSTEM))]
    failures: list[tuple[str, Exception]] = []
    for system in sorted(gen_sets):
        records = gen_sets[system]
        ids = sorted(records)

        def compute(uid: str, records=records) -> tuple[float, float]:
            return _utterance_metrics(gt_set[uid], records[uid], normalized)

        if executor is None:
            per_utterance = [compute(uid) for uid in ids]
        else:
            batch = executor.map(compute, ids, desc=f"{system} utterances")
            if batch.failures:
                failures.extend((f"{system}/{key}", exc) for key, exc in batch.failures)
                continue
            per_utterance = batch.results

        rows.append(
            EvalRow(
                system,
                pitch_moments(_pooled_f0(records)),
                pitch_dtw=math.fsum(d for d, _ in per_utterance) / len(per_utterance),
                energy_mae=math.fsum(m for _, m in per_utterance) / len(per_utterance),
                mos=mos.get(system),
            )
        )
        logger.info("Evaluated %s on %d utterances", system, len(ids))
    if failures:
        raise UtteranceFailures(failures)
    return EvalReport(tuple(rows), dtw_normalized=normalized)


def load_mos_scores(path: str | Path) -> dict[str, float]:
    """Pre-computed MOS per system from a TSV with ``system`` and ``mos`` columns."""
    try:
        frame = pd.read_csv(path, sep="\t", dtype={"system": str}, keep_default_na=False)
        return {str(s): float(v) for s, v in zip(frame["system"], frame["mos"])}
    except (KeyError, ValueError, pd.errors.ParserError) as exc:
        raise SchemaError(f"{path}: expected 'system' and 'mos' columns ({exc})") from exc


__all__ = ["GT_SYSTEM", "EvalRow", "EvalReport", "evaluate_corpus", "load_mos_scores"]
