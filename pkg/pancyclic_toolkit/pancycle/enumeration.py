"""Isomorph-free generation by canonical augmentation, plus graph6 ingestion.

Graphs grow one vertex at a time.  A child ``G' = P + z`` is kept only when
``z`` is a canonical deletion vertex of ``G'``: among the vertices minimising
the invariant ``(degree, sum of neighbour degrees)``, the one placed last by
the canonical labelling, up to automorphism.  Each class then has exactly one
parent class, so siblings are the only duplicates and are removed locally.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import BudgetError, PreconditionError
from .graph import Graph, add_vertex, delete_vertex, empty, iter_bits, iter_graph6_lines
from .iso import canonical_form, canonical_labeling, same_orbit
from .predicates import PrunePredicate, require_hereditary
from .settings import (
    DEFAULT_ORDER_CAP,
    GENERATE_MAX_PRUNED,
    GENERATE_MAX_UNPRUNED,
    GRAPH_COUNTS,
)

log = logging.getLogger(__name__)


class Shard(NamedTuple):
    index: int
    total: int

    def __str__(self) -> str:
        return f"{self.index}/{self.total}"


def parse_shard(text: str) -> Shard:
    """``"i/k"`` with ``0 ≤ i < k``."""
    try:
        i, k = (int(x) for x in text.split("/"))
    except ValueError:
        raise PreconditionError(f"shard must look like i/k, got {text!r}") from None
    if k < 1 or not 0 <= i < k:
        raise PreconditionError(f"shard index must satisfy 0 ≤ i < k, got {text!r}")
    return Shard(i, k)


def split_order(n: int) -> int:
    """Order at which the generation tree is dealt out round-robin to shards."""
    return max(1, n - 2)


def order_limit(pruned: bool) -> int:
    return GENERATE_MAX_PRUNED if pruned else GENERATE_MAX_UNPRUNED


def check_budget(n: int, pruners: Sequence[PrunePredicate]) -> None:
    """Refuse orders whose universe is out of reach.

    Only pruners that really shrink the universe raise the limit; the others
    leave it at the unpruned one.
    """
    pruned = any(p.shrinks for p in pruners)
    limit = order_limit(pruned)
    if n > limit:
        estimate = GRAPH_COUNTS[n] if n < len(GRAPH_COUNTS) else None
        kind = "pruned" if pruned else "unpruned"
        log.warning("refusing %s generation at order %d (limit %d)", kind, n, limit)
        raise BudgetError(
            f"{kind} generation is limited to order {limit}; order {n} has "
            f"{estimate if estimate is not None else 'too many'} graph classes before pruning",
            estimate=estimate,
        )


# ---------------------------------------------------------------------------
# Canonical augmentation
# ---------------------------------------------------------------------------


def _vertex_invariants(adj: tuple[int, ...]) -> list[tuple[int, int]]:
    degs = [row.bit_count() for row in adj]
    return [(degs[v], sum(degs[w] for w in iter_bits(row))) for v, row in enumerate(adj)]


def _accepted_key(child: Graph, parent_key: bytes) -> bytes | None:
    """Canonical key of *child* if its last vertex is a canonical deletion, else None."""
    z = child.n - 1
    inv = _vertex_invariants(child.adj)
    target = inv[z]
    if any(x < target for x in inv):
        return None
    lab = canonical_labeling(child)
    ties = [v for v in range(child.n) if inv[v] == target]
    if len(ties) > 1:
        position = {v: i for i, v in enumerate(lab.order)}
        c = max(ties, key=position.__getitem__)
        if c != z and not same_orbit(lab, c, z):
            # Not provably equivalent through the automorphisms at hand.
            if canonical_form(delete_vertex(child, c)).key != parent_key:
                return None
    return lab.key


def children(
    parent: Graph,
    parent_key: bytes,
    pruners: Sequence[PrunePredicate] = (),
    *,
    cap: int = DEFAULT_ORDER_CAP,
) -> Iterator[tuple[Graph, bytes]]:
    """Accepted one-vertex extensions of *parent*, one per isomorphism class."""
    tests = [t for t in (p.extender(parent) for p in pruners) if t is not None]
    seen: set[bytes] = set()
    for neighborhood in range(1 << parent.n):
        if not all(test(neighborhood) for test in tests):
            continue
        child = add_vertex(parent, neighborhood, cap=cap)
        key = _accepted_key(child, parent_key)
        if key is None or key in seen:
            continue
        seen.add(key)
        yield child, key


class _Halted(Exception):
    pass


def generate(
    n: int,
    predicates: Sequence[PrunePredicate] = (),
    shard: Shard | None = None,
    *,
    filters: Sequence[PrunePredicate] = (),
    cap: int = DEFAULT_ORDER_CAP,
    stop: Callable[[], bool] | None = None,
) -> Iterator[Graph]:
    """Every isomorphism class of order *n* passing *predicates*, exactly once.

    *predicates* prune the generation tree and must be hereditary; *filters*
    are checked on the emitted graphs only.  *stop* is polled at every tree
    node; once it returns True the generator ends early.
    """
    if n < 0:
        raise PreconditionError(f"order must be non-negative, got {n}")
    require_hereditary(list(predicates))
    check_budget(n, predicates)
    shard = shard or Shard(0, 1)

    def emit(g: Graph) -> bool:
        return all(p(g) for p in predicates) and all(f(g) for f in filters)

    if n == 0:
        g = empty(0)
        if shard.index == 0 and emit(g):
            yield g
        return

    split = split_order(n)
    dealt = 0

    def expand(g: Graph, key: bytes) -> Iterator[Graph]:
        nonlocal dealt
        if stop is not None and stop():
            raise _Halted
        if g.n == split:
            mine = dealt % shard.total == shard.index
            dealt += 1
            if not mine:
                return
        if g.n == n:
            if all(f(g) for f in filters):
                yield g
            return
        for child, child_key in children(g, key, predicates, cap=cap):
            yield from expand(child, child_key)

    root = empty(1)
    emitted = 0
    try:
        for g in expand(root, canonical_form(root).key):
            emitted += 1
            yield g
    except _Halted:
        log.debug("generation of order %d stopped after %d graphs (shard %s)", n, emitted, shard)
        return
    log.debug("generated %d graphs of order %d (shard %s)", emitted, n, shard)


# ---------------------------------------------------------------------------
# graph6 ingestion
# ---------------------------------------------------------------------------


def ingest_graph6(
    path: str | Path,
    predicates: Iterable[PrunePredicate] = (),
    *,
    cap: int = DEFAULT_ORDER_CAP,
) -> Iterator[Graph]:
    """Stream the graphs of a graph6 file, keeping those passing every predicate."""
    preds = list(predicates)
    with open(path, encoding="ascii", errors="replace") as fh:
        for g in iter_graph6_lines(fh, cap=cap):
            if all(p(g) for p in preds):
                yield g
