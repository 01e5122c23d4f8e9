"""Graph core — immutable simple graphs on bitset rows, plus graph6 input and output.

A graph of order ``n`` is stored as ``n`` Python ints; bit ``w`` of
``adj[v]`` is set iff ``vw`` is an edge.  Every constructor in this module
returns a symmetric, irreflexive adjacency whose set bits are all ``< n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import networkx as nx

from .errors import (
    CapacityError,
    GraphError,
    Graph6ParseError,
    InvalidVertexError,
    NotAnEdgeError,
    SelfLoopError,
)
from .settings import DEFAULT_ORDER_CAP, MAX_ORDER_CAP

GRAPH6_HEADER = ">>graph6<<"

# ---------------------------------------------------------------------------
# Bit helpers
# ---------------------------------------------------------------------------


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of *mask* in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


class Edge(NamedTuple):
    """An undirected edge, always normalised so that ``u < v``."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> Edge:
        if a == b:
            raise SelfLoopError(f"self-loop at vertex {a}")
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.u}-{self.v}"


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_rows(self.n, self.adj)

    @cached_property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> Iterator[Edge]:
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield Edge(u, u + 1 + v)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, size={self.size})"


def _check_cap(n: int, cap: int) -> None:
    if cap > MAX_ORDER_CAP:
        raise CapacityError(f"order cap {cap} exceeds the maximum of {MAX_ORDER_CAP}")
    if n > cap:
        raise CapacityError(f"order {n} exceeds the order cap {cap}")


def check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidVertexError(f"vertex {v} is not in 0..{g.n - 1}")


def _check_rows(n: int, adj: tuple[int, ...]) -> None:
    if n < 0:
        raise InvalidVertexError(f"negative order {n}")
    _check_cap(n, MAX_ORDER_CAP)
    if len(adj) != n:
        raise GraphError(f"order {n} needs {n} adjacency rows, got {len(adj)}")
    for v, row in enumerate(adj):
        if row < 0 or row >> n:
            raise InvalidVertexError(f"row {v} names a vertex outside 0..{n - 1}")
        if row >> v & 1:
            raise SelfLoopError(f"self-loop at vertex {v}")
        for w in iter_bits(row):
            if not adj[w] >> v & 1:
                raise GraphError(f"adjacency is not symmetric at {v}-{w}")


def _rows(n: int, rows: Sequence[int]) -> Graph:
    # Internal operations preserve the invariants, so the checks are skipped.
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", tuple(rows))
    return g


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def build(n: int, edges: Iterable[tuple[int, int]], *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Build a graph of order *n* with exactly the given edge set.

    Duplicate edges collapse.  Raises ``InvalidVertexError`` for endpoints
    outside ``0..n-1`` and ``SelfLoopError`` for ``u == v``.
    """
    if n < 0:
        raise InvalidVertexError(f"negative order {n}")
    _check_cap(n, cap)
    rows = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidVertexError(f"edge {a}-{b} has an endpoint outside 0..{n - 1}")
        if a == b:
            raise SelfLoopError(f"self-loop at vertex {a}")
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return _rows(n, rows)


def empty(n: int, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    return build(n, (), cap=cap)


def from_networkx(h: nx.Graph, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Convert a networkx graph; nodes are relabelled in sorted order."""
    index = {node: i for i, node in enumerate(sorted(h.nodes()))}
    return build(len(index), ((index[a], index[b]) for a, b in h.edges()), cap=cap)


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return _rows(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def disjoint_union(g: Graph, h: Graph, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """``g + h``: *g* keeps its indices, *h* is shifted by ``|g|``."""
    _check_cap(g.n + h.n, cap)
    return _rows(g.n + h.n, list(g.adj) + [row << g.n for row in h.adj])


def join(g: Graph, h: Graph, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """``g ∨ h``: the disjoint union plus every edge between the two sides."""
    _check_cap(g.n + h.n, cap)
    h_side = h.vertex_mask << g.n
    g_side = g.vertex_mask
    rows = [row | h_side for row in g.adj] + [(row << g.n) | g_side for row in h.adj]
    return _rows(g.n + h.n, rows)


def _vertex_set_mask(g: Graph, s: Iterable[int] | int) -> int:
    if isinstance(s, int):
        if s >> g.n:
            raise InvalidVertexError(f"vertex mask {s:#x} has bits outside 0..{g.n - 1}")
        return s
    m = 0
    for v in s:
        check_vertex(g, v)
        m |= 1 << v
    return m


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> Graph:
    """``G[S]`` with vertices relabelled by increasing original index.

    *s* is an iterable of vertices or a vertex bitmask.
    """
    mask = _vertex_set_mask(g, s)
    kept = list(iter_bits(mask))
    new_index = {v: i for i, v in enumerate(kept)}
    rows = []
    for v in kept:
        row = 0
        for w in iter_bits(g.adj[v] & mask):
            row |= 1 << new_index[w]
        rows.append(row)
    return _rows(len(kept), rows)


def induced_size(g: Graph, s: Iterable[int] | int) -> int:
    """``e(S)``: the number of edges with both endpoints in *s*."""
    mask = _vertex_set_mask(g, s)
    return sum((g.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise InvalidVertexError(f"{list(perm)} is not a permutation of 0..{g.n - 1}")
    rows = [0] * g.n
    for v, row in enumerate(g.adj):
        image = 0
        for w in iter_bits(row):
            image |= 1 << perm[w]
        rows[perm[v]] = image
    return _rows(g.n, rows)


def add_vertex(g: Graph, neighborhood: int, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Append vertex ``g.n`` adjacent to the vertices in the *neighborhood* mask."""
    _check_cap(g.n + 1, cap)
    if neighborhood >> g.n:
        raise InvalidVertexError(f"neighborhood {neighborhood:#x} has bits outside 0..{g.n - 1}")
    bit = 1 << g.n
    rows = [row | bit if neighborhood >> v & 1 else row for v, row in enumerate(g.adj)]
    rows.append(neighborhood)
    return _rows(g.n + 1, rows)


def delete_vertex(g: Graph, v: int) -> Graph:
    check_vertex(g, v)
    return induced_subgraph(g, g.vertex_mask & ~(1 << v))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    check_vertex(g, u)
    check_vertex(g, v)
    e = Edge.of(u, v)
    rows = list(g.adj)
    rows[e.u] |= 1 << e.v
    rows[e.v] |= 1 << e.u
    return _rows(g.n, rows)


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    require_edge(g, u, v)
    rows = list(g.adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return _rows(g.n, rows)


def require_edge(g: Graph, u: int, v: int) -> Edge:
    """Return the normalised edge ``uv`` or raise ``NotAnEdgeError``."""
    check_vertex(g, u)
    check_vertex(g, v)
    e = Edge.of(u, v)
    if not g.has_edge(e.u, e.v):
        raise NotAnEdgeError(f"{e} is not an edge of {g!r}")
    return e


def degree_sequence(g: Graph) -> list[int]:
    return sorted((row.bit_count() for row in g.adj), reverse=True)


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """Encode *g* as a graph6 string (no header, no trailing newline)."""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").rstrip("\n")


def _order_field(s: str, base: int) -> tuple[int, int]:
    """Order and data start of a header-free graph6 string."""
    if s[0] != "~":
        return ord(s[0]) - 63, 1
    if len(s) < 4:
        raise Graph6ParseError("truncated order field", base + len(s))
    if s[1] == "~":
        raise Graph6ParseError("orders above 258047 are not supported", base + 1)
    n = 0
    for ch in s[1:4]:
        n = (n << 6) | (ord(ch) - 63)
    return n, 4


def from_graph6(text: str, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is allowed).

    The string is checked here so errors carry the offending offset in
    *text*; the bits are unpacked by networkx.
    """
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        base += len(GRAPH6_HEADER)
    if not s:
        raise Graph6ParseError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"invalid graph6 character {ch!r}", base + i)

    n, pos = _order_field(s, base)
    try:
        _check_cap(n, cap)
    except CapacityError as exc:
        raise Graph6ParseError(str(exc), base) from exc

    expected = (n * (n - 1) // 2 + 5) // 6
    found = len(s) - pos
    if found != expected:
        raise Graph6ParseError(
            f"expected {expected} data bytes for order {n}, found {found}",
            base + pos + min(found, expected),
        )

    h = nx.from_graph6_bytes(s.encode("ascii"))
    rows = [0] * n
    for a, b in h.edges():
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return _rows(n, rows)


def iter_graph6_lines(lines: Iterable[str], *, cap: int = DEFAULT_ORDER_CAP) -> Iterator[Graph]:
    """Decode graph6 lines lazily; blank lines are skipped, errors name the line."""
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield from_graph6(line, cap=cap)
        except Graph6ParseError as exc:
            raise Graph6ParseError(exc.reason, exc.offset, lineno) from exc


def read_graph6_lines(text: str, *, cap: int = DEFAULT_ORDER_CAP) -> list[Graph]:
    """Decode newline-separated graph6 text."""
    return list(iter_graph6_lines(text.splitlines(), cap=cap))
