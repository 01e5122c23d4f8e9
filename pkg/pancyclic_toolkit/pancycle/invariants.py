"""Decidable graph parameters: δ, α, [s,t]-ness, triangles, bipartiteness, connectivity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError, UndefinedParameterError
from .graph import Graph, iter_bits
from .settings import KAPPA_CAP

# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityClass:
    is_connected: bool
    is_2_connected: bool
    kappa_lower: int
    cut: tuple[int, ...] | None = None  # a minimum separating set, when one of size ≤ 3 exists


@dataclass(frozen=True)
class BipartiteResult:
    is_bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise UndefinedParameterError("minimum degree of the empty graph is undefined")
    return min(row.bit_count() for row in g.adj)


def max_degree(g: Graph) -> int:
    if g.n == 0:
        raise UndefinedParameterError("maximum degree of the empty graph is undefined")
    return max(row.bit_count() for row in g.adj)


# ---------------------------------------------------------------------------
# Independence number
# ---------------------------------------------------------------------------


def _clique_cover_bound(adj: tuple[int, ...], cand: int) -> int:
    """Size of a greedy clique partition of *cand*, an upper bound on α(G[cand])."""
    cliques = 0
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        clique_common = adj[v] & rest
        rest &= ~(1 << v)
        while clique_common:
            w = (clique_common & -clique_common).bit_length() - 1
            rest &= ~(1 << w)
            clique_common &= adj[w]
        cliques += 1
    return cliques


def _greedy_independent(adj: tuple[int, ...], cand: int) -> int:
    size = 0
    while cand:
        v = min(iter_bits(cand), key=lambda x: (adj[x] & cand).bit_count())
        cand &= ~(adj[v] | (1 << v))
        size += 1
    return size


def _mis(adj: tuple[int, ...], cand: int, size: int, best: int) -> int:
    # Vertices of degree ≤ 1 inside cand lie in some maximum independent set.
    while cand:
        v = min(iter_bits(cand), key=lambda x: (adj[x] & cand).bit_count())
        if (adj[v] & cand).bit_count() > 1:
            break
        cand &= ~(adj[v] | (1 << v))
        size += 1
    if not cand:
        return max(best, size)
    if size + _clique_cover_bound(adj, cand) <= best:
        return best
    v = max(iter_bits(cand), key=lambda x: (adj[x] & cand).bit_count())
    best = _mis(adj, cand & ~(adj[v] | (1 << v)), size + 1, best)
    return _mis(adj, cand & ~(1 << v), size, best)


def independence_number(g: Graph) -> int:
    """α(G), exact, by branch and bound with a greedy clique-cover bound."""
    if g.n == 0:
        return 0
    full = g.vertex_mask
    return _mis(g.adj, full, 0, _greedy_independent(g.adj, full))


# ---------------------------------------------------------------------------
# [s,t]-graphs
# ---------------------------------------------------------------------------


def _sparse_quadruple(adj: tuple[int, ...], n: int, t: int) -> tuple[int, ...] | None:
    for d in range(3, n):
        row_d = adj[d]
        for c in range(2, d):
            e_cd = row_d >> c & 1
            row_c = adj[c]
            for b in range(1, c):
                e_bcd = e_cd + (row_c >> b & 1) + (row_d >> b & 1)
                if e_bcd >= t:
                    continue
                need = t - e_bcd
                mask = (1 << b) | (1 << c) | (1 << d)
                if need == 1:
                    free = ((1 << b) - 1) & ~(adj[b] | row_c | row_d)
                    if free:
                        return ((free & -free).bit_length() - 1, b, c, d)
                    continue
                for a in range(b):
                    if (adj[a] & mask).bit_count() < need:
                        return (a, b, c, d)
    return None


def _sparse_subset(adj: tuple[int, ...], n: int, s: int, t: int) -> tuple[int, ...] | None:
    chosen: list[int] = []

    def search(limit: int, k: int, mask: int, e: int) -> tuple[int, ...] | None:
        if e >= t:
            return None
        if k == 0:
            return tuple(sorted(chosen))
        for top in range(k - 1, limit):
            chosen.append(top)
            hit = search(top, k - 1, mask | (1 << top), e + (adj[top] & mask).bit_count())
            chosen.pop()
            if hit is not None:
                return hit
        return None

    return search(n, s, 0, 0)


def st_violation(g: Graph, s: int, t: int) -> tuple[int, ...] | None:
    """Return the first *s*-subset (colex order) inducing fewer than *t* edges, or None."""
    if s < 1 or t < 0:
        raise PreconditionError(f"[s,t] needs s ≥ 1 and t ≥ 0, got [{s},{t}]")
    if g.n < s:
        raise PreconditionError(f"an [{s},{t}]-graph has order at least {s}, got {g.n}")
    if t == 0:
        return None
    if s == 4:
        return _sparse_quadruple(g.adj, g.n, t)
    return _sparse_subset(g.adj, g.n, s, t)


def is_st_graph(g: Graph, s: int, t: int) -> bool:
    return st_violation(g, s, t) is None


def alpha_at_most(g: Graph, k: int) -> bool:
    """α(G) ≤ k, decided as "G is a [k+1,1]-graph"."""
    if g.n <= k:
        return True
    return is_st_graph(g, k + 1, 1)


# ---------------------------------------------------------------------------
# Triangles and bipartiteness
# ---------------------------------------------------------------------------


def is_triangle_free(g: Graph) -> bool:
    adj = g.adj
    for u in range(g.n):
        for v in iter_bits(adj[u] >> (u + 1)):
            if adj[u] & adj[u + 1 + v]:
                return False
    return True


def count_triangles(g: Graph) -> int:
    adj = g.adj
    total = 0
    for u in range(g.n):
        for v in iter_bits(adj[u] >> (u + 1)):
            v += u + 1
            total += (adj[u] & adj[v] & ~((2 << v) - 1)).bit_count()
    return total


def bipartite_witness(g: Graph) -> BipartiteResult:
    """BFS 2-colouring; on failure returns an odd cycle instead."""
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in iter_bits(g.adj[x]):
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif color[y] == color[x]:
                    return BipartiteResult(False, odd_cycle=_odd_cycle(parent, depth, x, y))
    return BipartiteResult(True, coloring=tuple(color))


def _odd_cycle(parent: list[int], depth: list[int], x: int, y: int) -> tuple[int, ...]:
    # x and y share a colour, so their BFS depths are equal.
    left, right = [x], [y]
    while x != y:
        x, y = parent[x], parent[y]
        left.append(x)
        right.append(y)
    return tuple(left + right[-2::-1])


def is_bipartite(g: Graph) -> bool:
    return bipartite_witness(g).is_bipartite


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def _reach(adj: tuple[int, ...], start: int, allowed: int) -> int:
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def connected_within(adj: tuple[int, ...], allowed: int) -> bool:
    """Whether the subgraph induced by the *allowed* mask is connected (empty counts)."""
    if not allowed:
        return True
    return _reach(adj, allowed & -allowed, allowed) == allowed


def is_connected(g: Graph) -> bool:
    return g.n >= 1 and connected_within(g.adj, g.vertex_mask)


def articulation_points(g: Graph) -> list[int]:
    full = g.vertex_mask
    return [v for v in range(g.n) if not connected_within(g.adj, full & ~(1 << v))]


def is_2_connected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    full = g.vertex_mask
    return all(connected_within(g.adj, full & ~(1 << v)) for v in range(g.n))


def vertex_cut(g: Graph, k: int) -> tuple[int, ...] | None:
    """A set of *k* vertices whose removal disconnects *g*, if one exists."""
    if g.n - k < 2:
        return None
    full = g.vertex_mask
    for cut in combinations(range(g.n), k):
        removed = 0
        for v in cut:
            removed |= 1 << v
        if not connected_within(g.adj, full & ~removed):
            return cut
    return None


def connectivity_class(g: Graph) -> ConnectivityClass:
    if not is_connected(g):
        return ConnectivityClass(False, False, 0, cut=())
    for k in range(1, KAPPA_CAP + 1):
        cut = vertex_cut(g, k)
        if cut is not None:
            return ConnectivityClass(True, g.n >= 3 and k >= 2, k, cut=cut)
    kappa = min(KAPPA_CAP, g.n - 1)
    return ConnectivityClass(True, g.n >= 3 and kappa >= 2, kappa)
