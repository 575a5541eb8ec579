"""
Batch Executor
--------------

Thread-pool runner for per-record work (one utterance, one chapter, one
sentence pair).  Results come back in input order whatever the number of
workers, and a failing record never stops the batch: its exception is kept
next to its key so the caller can list it and exit non-zero.

With ``max_workers=1`` everything runs inline in the calling thread.
"""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Iterable, Optional, Sequence, TypeVar

from tqdm import tqdm

from .utils.logger import get_logger

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class BatchResult(Generic[R]):
    done: list[tuple[str, R]] = field(default_factory=list)
    failures: list[tuple[str, Exception]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def results(self) -> list[R]:
        return [result for _, result in self.done]


class BatchExecutor:
    """Run a function over records with ordered results and collected failures."""

    def __init__(self, max_workers: int = 1, progress: Optional[bool] = None) -> None:
        if max_workers < 1:
            raise ValueError("max_workers must be at least 1")
        self.max_workers = max_workers
        self.progress = sys.stderr.isatty() if progress is None else progress
        self.logger = get_logger(self.__class__.__name__)
        self._executor: Optional[ThreadPoolExecutor] = None

    def __enter__(self) -> "BatchExecutor":
        if self.max_workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.shutdown()

    def shutdown(self) -> None:
        if self._executor:
            self._executor.shutdown(wait=True)
            self._executor = None

    def map(
        self,
        func: Callable[[T], R],
        items: Iterable[T],
        key: Callable[[T], Any] = str,
        desc: str = "records",
    ) -> BatchResult[R]:
        items = list(items)
        keys = [str(key(item)) for item in items]
        outcomes: list[Any] = [None] * len(items)
        failed: list[Optional[Exception]] = [None] * len(items)

        with tqdm(total=len(items), desc=desc, unit="rec", file=sys.stderr, disable=not self.progress) as bar:
            if self.max_workers == 1:
                for index, item in enumerate(items):
                    try:
                        outcomes[index] = func(item)
                    except Exception as exc:
                        failed[index] = exc
                    bar.update(1)
            else:
                if not self._executor:
                    self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
                futures = {self._executor.submit(func, item): index for index, item in enumerate(items)}
                for future in as_completed(futures):
                    index = futures[future]
                    try:
                        outcomes[index] = future.result()
                    except Exception as exc:
                        failed[index] = exc
                    bar.update(1)

        batch: BatchResult[R] = BatchResult()
        for index, record_key in enumerate(keys):
            if failed[index] is not None:
                self.logger.warning("%s failed: %s", record_key, failed[index])
                batch.failures.append((record_key, failed[index]))
            else:
                batch.done.append((record_key, outcomes[index]))
        self.logger.info("Processed %d %s, %d failed", len(items), desc, len(batch.failures))
        return batch


def run_batch(
    func: Callable[[T], R],
    items: Sequence[T],
    key: Callable[[T], Any] = str,
    jobs: int = 1,
    desc: str = "records",
) -> BatchResult[R]:
    with BatchExecutor(max_workers=jobs) as executor:
        return executor.map(func, items, key=key, desc=desc)


__all__ = ["BatchExecutor", "BatchResult", "run_batch"]
