"""Cycle-length spectra, pancyclic predicates and Hamilton-cycle counting.

Spectra come from one subset DP over states ``(S, w)`` = "there is a simple
path from the source through exactly the vertex set ``S`` ending at ``w``".
A path of ``k`` vertices ending at a neighbour of the source closes a
``k``-cycle.  Layers are kept as ``{S: endpoint bitset}`` so only reachable
states are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetError, PreconditionError
from .graph import Edge, Graph, check_vertex, iter_bits, require_edge
from .invariants import connected_within, is_2_connected
from .settings import DEFAULT_HAMILTON_CAP, SPECTRUM_MAX_ORDER

EDGE = "edge"
VERTEX = "vertex"
GRAPH = "graph"


@dataclass(frozen=True)
class CycleSpectrum:
    """Cycle lengths as a bitmask: bit ``k`` set ⇔ a ``k``-cycle exists (3 ≤ k ≤ n)."""

    lengths: int
    n: int
    subject: str

    def __contains__(self, k: int) -> bool:
        return bool(self.lengths >> k & 1)

    @property
    def full_mask(self) -> int:
        return full_length_mask(self.n)

    def is_full(self) -> bool:
        return self.n >= 3 and self.lengths == self.full_mask

    def covers(self, ks: Iterable[int]) -> bool:
        return all(k in self for k in ks)

    def as_list(self) -> list[int]:
        return list(iter_bits(self.lengths))


@dataclass(frozen=True)
class HamiltonCount:
    count_capped: int
    cap: int

    @property
    def saturated(self) -> bool:
        return self.count_capped >= self.cap


def full_length_mask(n: int) -> int:
    """Bits 3..n."""
    return ((1 << (n + 1)) - 1) & ~0b111 if n >= 3 else 0


def _check_order(g: Graph) -> None:
    if g.n > SPECTRUM_MAX_ORDER:
        raise BudgetError(
            f"cycle spectra are limited to order {SPECTRUM_MAX_ORDER}, got {g.n}",
            estimate=1 << (g.n - 1),
        )


def _path_lengths(
    adj: tuple[int, ...], n: int, source: int, allowed: int, terminal: int = -1
) -> list[int]:
    """``out[w]`` has bit ``k`` set iff a simple ``k``-vertex path runs source → w inside *allowed*.

    Paths are not extended past *terminal*.
    """
    out = [0] * n
    layer = {1 << source: 1 << source}
    k = 1
    while layer:
        k += 1
        nxt: dict[int, int] = {}
        for mask, ends in layer.items():
            for w in iter_bits(ends):
                if w == terminal:
                    continue
                for x in iter_bits(adj[w] & allowed & ~mask):
                    m2 = mask | (1 << x)
                    nxt[m2] = nxt.get(m2, 0) | (1 << x)
        bit = 1 << k
        for ends in nxt.values():
            for x in iter_bits(ends):
                out[x] |= bit
        layer = nxt
    return out


# ---------------------------------------------------------------------------
# Edge spectra
# ---------------------------------------------------------------------------


def edge_cycle_spectrum(g: Graph, e: tuple[int, int]) -> CycleSpectrum:
    """Lengths ``k`` such that edge *e* lies in a ``k``-cycle."""
    u, v = require_edge(g, *e)
    _check_order(g)
    lengths = _path_lengths(g.adj, g.n, u, g.vertex_mask, terminal=v)[v]
    return CycleSpectrum(lengths & full_length_mask(g.n), g.n, EDGE)


def all_edge_spectra(g: Graph) -> dict[Edge, CycleSpectrum]:
    """Every edge's spectrum, sharing one DP per source vertex."""
    _check_order(g)
    full = full_length_mask(g.n)
    out = {}
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1)
        if not higher:
            continue
        lengths = _path_lengths(g.adj, g.n, u, g.vertex_mask)
        for v in iter_bits(higher):
            v += u + 1
            out[Edge(u, v)] = CycleSpectrum(lengths[v] & full, g.n, EDGE)
    return out


def is_A_cyclic(g: Graph, e: tuple[int, int], lengths: Iterable[int]) -> bool:
    wanted = sorted(set(lengths))
    if any(not 3 <= k <= g.n for k in wanted):
        raise PreconditionError(f"cycle lengths must lie in 3..{g.n}, got {wanted}")
    return edge_cycle_spectrum(g, e).covers(wanted)


def is_pancyclic_edge(g: Graph, e: tuple[int, int]) -> bool:
    if g.n < 3:
        raise PreconditionError("pancyclic edges need order at least 3")
    return edge_cycle_spectrum(g, e).is_full()


def find_pancyclic_edge(g: Graph) -> Edge | None:
    """The first pancyclic edge in lexicographic order, or None."""
    if g.n < 3:
        raise PreconditionError("pancyclic edges need order at least 3")
    _check_order(g)
    # A pancyclic edge lies on a Hamilton cycle.
    if not is_2_connected(g):
        return None
    full = full_length_mask(g.n)
    for u in range(g.n - 1):
        higher = g.adj[u] >> (u + 1)
        if not higher:
            continue
        lengths = _path_lengths(g.adj, g.n, u, g.vertex_mask)
        for v in iter_bits(higher):
            v += u + 1
            if lengths[v] & full == full:
                return Edge(u, v)
    return None


def has_pancyclic_edge(g: Graph) -> bool:
    return find_pancyclic_edge(g) is not None


def pancyclic_edges(g: Graph) -> list[Edge]:
    return [e for e, spec in all_edge_spectra(g).items() if spec.is_full()]


def is_edge_pancyclic(g: Graph) -> bool:
    if g.n < 3:
        raise PreconditionError("pancyclicity needs order at least 3")
    spectra = all_edge_spectra(g)
    return bool(spectra) and all(spec.is_full() for spec in spectra.values())


# ---------------------------------------------------------------------------
# Vertex and graph spectra
# ---------------------------------------------------------------------------


def vertex_cycle_spectrum(g: Graph, v: int) -> CycleSpectrum:
    """Union of the spectra of the edges at *v*."""
    check_vertex(g, v)
    if g.n < 3:
        raise PreconditionError("cycle spectra need order at least 3")
    _check_order(g)
    lengths = _path_lengths(g.adj, g.n, v, g.vertex_mask)
    union = 0
    for w in iter_bits(g.adj[v]):
        union |= lengths[w]
    return CycleSpectrum(union & full_length_mask(g.n), g.n, VERTEX)


def is_vertex_pancyclic(g: Graph) -> bool:
    if g.n < 3:
        raise PreconditionError("pancyclicity needs order at least 3")
    if not is_2_connected(g):
        return False
    return all(vertex_cycle_spectrum(g, v).is_full() for v in range(g.n))


def graph_cycle_spectrum(g: Graph, *, stop_when_full: bool = False) -> CycleSpectrum:
    """All cycle lengths of *g*.

    Each cycle is found from its smallest vertex, so the DP from ``u`` only
    walks vertices ``≥ u``.
    """
    if g.n < 3:
        return CycleSpectrum(0, g.n, GRAPH)
    _check_order(g)
    full = full_length_mask(g.n)
    union = 0
    for u in range(g.n - 2):
        allowed = g.vertex_mask & ~((1 << u) - 1)
        if (g.adj[u] & allowed).bit_count() < 2:
            continue
        lengths = _path_lengths(g.adj, g.n, u, allowed)
        for w in iter_bits(g.adj[u] & allowed):
            union |= lengths[w]
        union &= full
        if stop_when_full and union == full:
            break
    return CycleSpectrum(union, g.n, GRAPH)


def is_pancyclic(g: Graph) -> bool:
    if g.n < 3:
        raise PreconditionError("pancyclicity needs order at least 3")
    return graph_cycle_spectrum(g, stop_when_full=True).is_full()


# ---------------------------------------------------------------------------
# Hamilton cycles
# ---------------------------------------------------------------------------


def hamilton_count(g: Graph, cap: int = DEFAULT_HAMILTON_CAP) -> HamiltonCount:
    """Count Hamilton cycles (as edge sets) up to *cap*.

    Backtracking from vertex 0 with three prunings: the unvisited vertices
    must induce a connected graph, each needs two usable neighbours, and an
    unvisited vertex with exactly two usable neighbours, one of them the
    current end, forces the next step.  A cycle is counted once by requiring
    the second vertex to be smaller than the last.
    """
    if g.n < 3:
        raise PreconditionError("Hamilton cycles need order at least 3")
    if cap < 1:
        raise PreconditionError(f"cap must be at least 1, got {cap}")
    if not is_2_connected(g):
        return HamiltonCount(0, cap)

    adj = g.adj
    full = g.vertex_mask
    count = 0

    def extend(end: int, visited: int, second: int) -> None:
        nonlocal count
        if visited == full:
            if adj[end] & 1 and second < end:
                count += 1
            return
        unvisited = full & ~visited
        if not connected_within(adj, unvisited):
            return
        usable = unvisited | (1 << end) | 1
        forced = -1
        for x in iter_bits(unvisited):
            d = (adj[x] & usable).bit_count()
            if d < 2:
                return
            if d == 2 and end != 0 and adj[x] >> end & 1:
                if forced != -1:
                    return
                forced = x
        choices = adj[end] & unvisited if forced == -1 else 1 << forced
        for x in iter_bits(choices):
            extend(x, visited | (1 << x), x if second < 0 else second)
            if count >= cap:
                return

    extend(0, 1, -1)
    return HamiltonCount(min(count, cap), cap)


def is_hamiltonian(g: Graph) -> bool:
    return hamilton_count(g, cap=1).count_capped >= 1


def is_uniquely_hamiltonian(g: Graph) -> bool:
    return hamilton_count(g, cap=2).count_capped == 1
