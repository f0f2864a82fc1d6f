"""TrialPool: independent trials with bounded concurrency, merged by index."""

from __future__ import annotations

import asyncio
import logging
from dataclasses import dataclass
from typing import Any, Callable, Generic, TypeVar

T = TypeVar("T")

logger = logging.getLogger(__name__)


@dataclass
class TrialRecord(Generic[T]):
    """Outcome of one trial."""

    index: int
    result: T | None = None
    error: BaseException | None = None
    is_complete: bool = False


class TrialPool(Generic[T]):
    """Runs ``fn(index)`` for every index in worker threads.

    An asyncio.Semaphore limits how many trials run at once. Records are kept
    by index, so the merged output does not depend on completion order.
    """

    def __init__(self, fn: Callable[[int], T], max_concurrent: int = 1) -> None:
        if max_concurrent < 1:
            raise ValueError(f"max_concurrent must be >= 1, got {max_concurrent}")
        self._fn = fn
        self._semaphore = asyncio.Semaphore(max_concurrent)
        self._records: dict[int, TrialRecord[T]] = {}

    async def _run_one(self, record: TrialRecord[T]) -> None:
        async with self._semaphore:
            try:
                record.result = await asyncio.to_thread(self._fn, record.index)
            except Exception as e:
                record.error = e
                logger.exception("Trial %d failed", record.index)
            finally:
                record.is_complete = True

    async def run(self, count: int) -> list[T]:
        """Run trials 0..count-1; re-raises the lowest-index failure."""
        records = [TrialRecord[T](index=i) for i in range(count)]
        self._records = {r.index: r for r in records}
        await asyncio.gather(*(self._run_one(r) for r in records))
        for r in records:
            if r.error is not None:
                raise r.error
        return [r.result for r in records]  # type: ignore[misc]

    @property
    def completed_count(self) -> int:
        return sum(1 for r in self._records.values() if r.is_complete)

    @property
    def all_records(self) -> dict[int, TrialRecord[T]]:
        return dict(self._records)


def run_trials(fn: Callable[[int], Any], count: int, max_concurrent: int = 1) -> list[Any]:
    """Synchronous entry point: results in trial order."""
    if count <= 0:
        return []
    if max_concurrent <= 1:
        return [fn(i) for i in range(count)]

    async def _main() -> list[Any]:
        return await TrialPool(fn, max_concurrent).run(count)

    return asyncio.run(_main())
