"""Canonical forms, isomorphism testing and stream deduplication.

Canonical labelling is individualisation–refinement: an ordered partition
is refined to equitability (cells split by neighbour counts into each
splitter cell), the first non-singleton cell is individualised vertex by
vertex in ascending index order, and the lexicographically smallest leaf
certificate wins.  Leaves with equal certificates yield automorphisms, which
prune children lying in the orbit of an explored child.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import Graph, iter_bits, permute

# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """``n`` followed by the minimal upper-triangle bitstring, as bytes."""

    key: bytes

    def hex(self) -> str:
        return self.key.hex()


@dataclass(frozen=True)
class Labeling:
    form: CanonicalForm
    order: tuple[int, ...]  # order[i] is the vertex placed at canonical position i
    generators: tuple[tuple[int, ...], ...]  # automorphisms met during the search

    @property
    def key(self) -> bytes:
        return self.form.key


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


def _refine(adj: tuple[int, ...], cells: list[int], splitters: Iterable[int], n: int) -> list[int]:
    queue = deque(splitters)
    while queue and len(cells) < n:
        w = queue.popleft()
        refined: list[int] = []
        for x in cells:
            if not x & (x - 1):
                refined.append(x)
                continue
            groups: dict[int, int] = {}
            for v in iter_bits(x):
                c = (adj[v] & w).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                refined.append(x)
                continue
            parts = [groups[c] for c in sorted(groups)]
            refined.extend(parts)
            queue.extend(parts)
        cells = refined
    return cells


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    """Column ``j`` of the relabelled upper triangle, bit ``i`` = edge between positions i < j."""
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cols = []
    for j in range(1, len(order)):
        col = 0
        for w in iter_bits(adj[order[j]]):
            p = pos[w]
            if p < j:
                col |= 1 << (j - 1 - p)
        cols.append(col)
    return tuple(cols)


def _pack(n: int, cert: tuple[int, ...]) -> bytes:
    bits = 0
    width = 0
    for j, col in enumerate(cert, start=1):
        bits = (bits << j) | col
        width += j
    return bytes([n]) + bits.to_bytes((width + 7) // 8, "big")


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


def _orbit_roots(n: int, generators: Iterable[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        for v, image in enumerate(gamma):
            a, b = find(v), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


# ---------------------------------------------------------------------------
# Canonical labelling
# ---------------------------------------------------------------------------


def canonical_labeling(g: Graph) -> Labeling:
    n = g.n
    if n == 0:
        return Labeling(CanonicalForm(bytes([0])), (), ())
    adj = g.adj
    full = g.vertex_mask
    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    automorphisms: list[tuple[int, ...]] = []

    def search(cells: list[int], prefix: tuple[int, ...]) -> None:
        nonlocal best_cert, best_order
        if len(cells) == n:
            order = [c.bit_length() - 1 for c in cells]
            cert = _certificate(adj, order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                gamma = [0] * n
                for a, b in zip(best_order, order):
                    gamma[a] = b
                automorphisms.append(tuple(gamma))
            return
        idx = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[idx]
        explored: list[int] = []
        for v in iter_bits(target):
            if explored:
                fixing = [a for a in automorphisms if all(a[p] == p for p in prefix)]
                if fixing:
                    roots = _orbit_roots(n, fixing)
                    if any(roots[v] == roots[u] for u in explored):
                        continue
            child = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            search(_refine(adj, child, [1 << v], n), prefix + (v,))
            explored.append(v)

    search(_refine(adj, [full], [full], n), ())
    assert best_cert is not None
    return Labeling(
        CanonicalForm(_pack(n, best_cert)), tuple(best_order), tuple(automorphisms)
    )


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g).form


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative: *g* relabelled into canonical order."""
    lab = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab.order):
        perm[v] = i
    return permute(g, perm)


def automorphism_orbits(g: Graph) -> list[list[int]]:
    roots = _orbit_roots(g.n, canonical_labeling(g).generators)
    orbits: dict[int, list[int]] = {}
    for v, r in enumerate(roots):
        orbits.setdefault(r, []).append(v)
    return list(orbits.values())


def same_orbit(lab: Labeling, a: int, b: int) -> bool:
    if a == b:
        return True
    roots = _orbit_roots(len(lab.order), lab.generators)
    return roots[a] == roots[b]


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size != h.size:
        return False
    if sorted(r.bit_count() for r in g.adj) != sorted(r.bit_count() for r in h.adj):
        return False
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# Deduplication
# ---------------------------------------------------------------------------


@dataclass
class KeySet:
    """Canonical keys seen so far.

    Workers fill their own ``KeySet``; a single reducer merges them.  The
    merged key set does not depend on how the input was partitioned.
    """

    keys: set[bytes] = field(default_factory=set)

    def add(self, g: Graph) -> bool:
        """Record *g*; True when its class was not seen before."""
        key = canonical_form(g).key
        if key in self.keys:
            return False
        self.keys.add(key)
        return True

    def merge(self, other: KeySet) -> KeySet:
        return KeySet(self.keys | other.keys)

    def __len__(self) -> int:
        return len(self.keys)


def dedup(graphs: Iterable[Graph]) -> Iterator[Graph]:
    """One representative per isomorphism class, first-seen order."""
    seen = KeySet()
    for g in graphs:
        if seen.add(g):
            yield g
