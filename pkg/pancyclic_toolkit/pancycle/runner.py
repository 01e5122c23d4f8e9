"""Runner — the ONLY place worker processes are started.

A run is split into shards, each shard is swept by a stateless worker, and a
single reducer combines the results:
  1. ``--jobs j`` deals the generation tree out to ``j`` shards
  2. an explicit ``--shard i/k`` restricts the run to that shard, still
     subdivided ``j`` ways (sub-shard ``i + k·r`` of ``k·j``)
  3. shard reports are combined, then finalised once
Results do not depend on ``j``.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from . import verify
from .enumeration import Shard, generate
from .predicates import PrunePredicate
from .reports import VerificationReport, combine
from .settings import DEFAULT_JOBS, DEFAULT_ORDER_CAP

log = logging.getLogger(__name__)

T = TypeVar("T")


def sub_shards(shard: Shard | None, jobs: int) -> list[Shard]:
    """Partition *shard* (or the whole tree) into *jobs* finer shards."""
    base = shard or Shard(0, 1)
    return [Shard(base.index + base.total * r, base.total * jobs) for r in range(jobs)]


# ── The ONLY function that starts worker processes ───────────────────────


def _map(fn: Callable[..., T], jobs: int, calls: Sequence[tuple]) -> list[T]:
    if jobs <= 1 or len(calls) <= 1:
        return [fn(*args) for args in calls]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args) for args in calls]
        return [f.result() for f in futures]


# ── Verification ─────────────────────────────────────────────────────────


def _verify_worker(spec: verify.CheckSpec, shard: Shard) -> VerificationReport:
    report = verify.run_shard(spec, shard)
    log.info("%s shard %s: %d graphs", spec.check_id, shard, report.universe_size)
    return report


def run_verification(
    spec: verify.CheckSpec,
    *,
    jobs: int = DEFAULT_JOBS,
    shard: Shard | None = None,
) -> VerificationReport:
    """Run *spec* (optionally one shard of it) on *jobs* workers and finalise."""
    jobs = max(1, jobs)
    started = time.perf_counter()
    parts = _map(_verify_worker, jobs, [(spec, s) for s in sub_shards(shard, jobs)])
    report = combine(parts)
    report.shards = [str(shard or Shard(0, 1))]
    report = verify.finalize(report)
    log.info(
        "%s: %s after %d graphs in %.2fs (jobs=%d)",
        spec.check_id, report.status, report.universe_size, time.perf_counter() - started, jobs,
    )
    return report


# ── Enumeration ──────────────────────────────────────────────────────────


def _enumerate_worker(
    n: int,
    predicates: list[PrunePredicate],
    filters: list[PrunePredicate],
    shard: Shard,
    cap: int,
) -> list[str]:
    return [
        verify.canonical_g6(g)
        for g in generate(n, predicates, shard, filters=filters, cap=cap)
    ]


def run_enumeration(
    n: int,
    predicates: Sequence[PrunePredicate] = (),
    filters: Sequence[PrunePredicate] = (),
    *,
    jobs: int = DEFAULT_JOBS,
    shard: Shard | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> list[str]:
    """Canonical graph6 lines of every generated class, sorted."""
    jobs = max(1, jobs)
    calls = [(n, list(predicates), list(filters), s, cap) for s in sub_shards(shard, jobs)]
    lines = [line for part in _map(_enumerate_worker, jobs, calls) for line in part]
    log.info("enumerated %d graphs of order %d", len(lines), n)
    return sorted(lines)
