"""Constructors for every named graph, with fixed vertex-index conventions.

Index conventions
-----------------
G0..G3(n)     parts V1 = {0..⌊n/2⌋-1}, V2 = {⌊n/2⌋..n-1}; u = 0, y = 1,
              v = ⌊n/2⌋, x = ⌊n/2⌋ + 1.  G0 = K - uv, G1 = G0 - ux,
              G2 = G0 - vy, G3 = G0 - xy.
barbell(n)    complement of G0(n); barbell_plus(n) complement of G3(n).
BT(n)         K_{m,m} on {0..m-1} ∪ {m..2m-1} (m = (n-1)/2), apex n-1
              adjacent to 0 and m.
remark1(n)    0, 1 = the 2K1; 2 = the lone K1; 3..n-1 = K_{n-3}.
blowup(H, k)  copies of vertex v are v*k .. v*k + k - 1.
diamond       x1..x4 = 0..3, missing edge x3x4 (chord x1x2 = 0-1).
house         x1..x5 = 0..4, roof triangle x1x2x3, square x2-x4-x5-x3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb

from . import graph as G
from .errors import FamilyParameterError
from .graph import Graph
from .invariants import (
    ConnectivityClass,
    connectivity_class,
    count_triangles,
    independence_number,
    is_bipartite,
    is_triangle_free,
    min_degree,
)
from .settings import DEFAULT_ORDER_CAP

# ---------------------------------------------------------------------------
# Family names
# ---------------------------------------------------------------------------
COMPLETE = "complete"
CYCLE = "cycle"
PATH = "path"
COMPLETE_BIPARTITE = "complete_bipartite"
COMPLETE_BIPARTITE_MINUS_EDGE = "complete_bipartite_minus_edge"
G0 = "G0"
G1 = "G1"
G2 = "G2"
G3 = "G3"
BARBELL = "barbell"
BARBELL_PLUS = "barbell_plus"
BLOWUP = "blowup"
BT = "BT"
REMARK1 = "remark1"
DIAMOND = "diamond"
HOUSE = "house"
PETERSEN = "petersen"
WHEEL = "wheel"

ALL_FAMILIES: list[str] = [
    COMPLETE,
    CYCLE,
    PATH,
    COMPLETE_BIPARTITE,
    COMPLETE_BIPARTITE_MINUS_EDGE,
    G0,
    G1,
    G2,
    G3,
    BARBELL,
    BARBELL_PLUS,
    BLOWUP,
    BT,
    REMARK1,
    DIAMOND,
    HOUSE,
    PETERSEN,
    WHEEL,
]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[int, ...] = ()
    base: FamilySpec | None = None

    def label(self) -> str:
        """The CLI string form; ``parse_family_spec(spec.label()) == spec``."""
        parts = [self.name]
        if self.base is not None:
            parts.append(self.base.label())
        parts.extend(str(p) for p in self.params)
        return ":".join(parts)


# ---------------------------------------------------------------------------
# Spec strings (order matters: first match wins)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Rule:
    family: str
    pattern: re.Pattern[str]


_RULES: list[_Rule] = [
    # ---- short forms ----
    _Rule(COMPLETE_BIPARTITE_MINUS_EDGE, re.compile(r"^K(\d+),(\d+)-$")),
    _Rule(COMPLETE_BIPARTITE, re.compile(r"^K(\d+),(\d+)$")),
    _Rule(COMPLETE, re.compile(r"^K(\d+)$")),
    _Rule(CYCLE, re.compile(r"^C(\d+)$")),
    _Rule(PATH, re.compile(r"^P(\d+)$")),
    _Rule(WHEEL, re.compile(r"^W(\d+)$")),
    # ---- long forms ----
    _Rule(COMPLETE_BIPARTITE_MINUS_EDGE, re.compile(r"^(?:complete_bipartite_minus_edge|Kst-):(\d+):(\d+)$")),
    _Rule(COMPLETE_BIPARTITE, re.compile(r"^(?:complete_bipartite|Kst):(\d+):(\d+)$")),
    _Rule(COMPLETE, re.compile(r"^(?:complete|K):(\d+)$")),
    _Rule(CYCLE, re.compile(r"^(?:cycle|C):(\d+)$")),
    _Rule(PATH, re.compile(r"^(?:path|P):(\d+)$")),
    _Rule(WHEEL, re.compile(r"^wheel:(\d+)$")),
    _Rule(G0, re.compile(r"^G0:(\d+)$")),
    _Rule(G1, re.compile(r"^G1:(\d+)$")),
    _Rule(G2, re.compile(r"^G2:(\d+)$")),
    _Rule(G3, re.compile(r"^G3:(\d+)$")),
    _Rule(BARBELL_PLUS, re.compile(r"^(?:barbell_plus|barbell\+|B\+):(\d+)$")),
    _Rule(BARBELL, re.compile(r"^(?:barbell|B):(\d+)$")),
    _Rule(BLOWUP, re.compile(r"^blowup:(.+):(\d+)$")),
    _Rule(BT, re.compile(r"^BT:(\d+)$")),
    _Rule(REMARK1, re.compile(r"^remark1:(\d+)$")),
    # ---- fixed graphs ----
    _Rule(DIAMOND, re.compile(r"^diamond$")),
    _Rule(HOUSE, re.compile(r"^house$")),
    _Rule(PETERSEN, re.compile(r"^petersen$")),
]


def match_family_spec(text: str) -> FamilySpec | None:
    """Parse *text* as a family spec; ``None`` when no rule matches."""
    s = text.strip()
    for rule in _RULES:
        m = rule.pattern.match(s)
        if m is None:
            continue
        if rule.family == BLOWUP:
            base = match_family_spec(m.group(1))
            if base is None:
                raise FamilyParameterError(f"unknown base graph {m.group(1)!r} in {s!r}")
            return FamilySpec(BLOWUP, (int(m.group(2)),), base)
        return FamilySpec(rule.family, tuple(int(x) for x in m.groups()))
    return None


def parse_family_spec(text: str) -> FamilySpec:
    spec = match_family_spec(text)
    if spec is None:
        raise FamilyParameterError(
            f"unknown family spec {text!r}; families: {', '.join(ALL_FAMILIES)}"
        )
    return spec


def parse_graph_argument(text: str, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """A family spec or a graph6 string; the two are interchangeable on the CLI."""
    spec = match_family_spec(text)
    if spec is not None:
        return construct(spec, cap=cap)
    return G.from_graph6(text, cap=cap)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _require(ok: bool, spec: FamilySpec, condition: str) -> None:
    if not ok:
        raise FamilyParameterError(f"{spec.label()}: requires {condition}")


def complete(n: int) -> Graph:
    return G.build(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(n: int) -> Graph:
    return G.build(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return G.build(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(s: int, t: int) -> Graph:
    return G.build(s + t, ((i, s + j) for i in range(s) for j in range(t)))


def complete_bipartite_minus_edge(s: int, t: int) -> Graph:
    return G.remove_edge(complete_bipartite(s, t), 0, s)


def _g0_labels(n: int) -> tuple[int, int, int, int]:
    """(u, y, v, x) for order *n*."""
    a = n // 2
    return 0, 1, a, a + 1


def g0(n: int) -> Graph:
    u, _, v, _ = _g0_labels(n)
    return G.remove_edge(complete_bipartite(n // 2, n - n // 2), u, v)


def g1(n: int) -> Graph:
    u, _, _, x = _g0_labels(n)
    return G.remove_edge(g0(n), u, x)


def g2(n: int) -> Graph:
    _, y, v, _ = _g0_labels(n)
    return G.remove_edge(g0(n), v, y)


def g3(n: int) -> Graph:
    _, y, _, x = _g0_labels(n)
    return G.remove_edge(g0(n), x, y)


def barbell(n: int) -> Graph:
    return G.complement(g0(n))


def barbell_plus(n: int) -> Graph:
    return G.complement(g3(n))


def blowup(base: Graph, k: int, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """H^(k): every vertex becomes *k* independent copies."""
    edges = []
    for a, b in base.edges():
        for i in range(k):
            for j in range(k):
                edges.append((a * k + i, b * k + j))
    return G.build(base.n * k, edges, cap=cap)


def bt(n: int) -> Graph:
    m = (n - 1) // 2
    apex = n - 1
    edges = [(i, m + j) for i in range(m) for j in range(m)]
    edges += [(apex, 0), (apex, m)]
    return G.build(n, edges)


def remark1(n: int) -> Graph:
    lone_and_clique = G.disjoint_union(G.empty(1), complete(n - 3))
    return G.join(G.empty(2), lone_and_clique)


def diamond() -> Graph:
    return G.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def house() -> Graph:
    return G.build(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return G.build(10, outer + spokes + inner)


def wheel(k: int) -> Graph:
    return G.join(G.empty(1), cycle(k))


def construct(spec: FamilySpec, *, cap: int = DEFAULT_ORDER_CAP) -> Graph:
    """Build the graph named by *spec*; bad parameters raise ``FamilyParameterError``."""
    p = spec.params
    name = spec.name
    arity = {BLOWUP: 1, COMPLETE_BIPARTITE: 2, COMPLETE_BIPARTITE_MINUS_EDGE: 2,
             DIAMOND: 0, HOUSE: 0, PETERSEN: 0}.get(name, 1)
    if name not in ALL_FAMILIES:
        raise FamilyParameterError(f"unknown family {name!r}")
    _require(len(p) == arity, spec, f"{arity} integer parameter(s)")

    if name in (COMPLETE_BIPARTITE, COMPLETE_BIPARTITE_MINUS_EDGE):
        _require(min(p) >= 1, spec, "both part sizes ≥ 1")
        order = p[0] + p[1]
    elif name == BLOWUP:
        _require(spec.base is not None, spec, "a base graph")
        _require(p[0] >= 1, spec, "k ≥ 1")
        order = 0
    else:
        order = p[0] if p else 0
    if order > cap:
        raise FamilyParameterError(f"{spec.label()}: order {order} exceeds the cap {cap}")

    if name == COMPLETE:
        _require(order >= 1, spec, "n ≥ 1")
        return complete(order)
    if name == CYCLE:
        _require(order >= 3, spec, "n ≥ 3")
        return cycle(order)
    if name == PATH:
        _require(order >= 1, spec, "n ≥ 1")
        return path(order)
    if name == WHEEL:
        _require(3 <= order < cap, spec, "3 ≤ k < cap")
        return wheel(order)
    if name == COMPLETE_BIPARTITE:
        return complete_bipartite(*p)
    if name == COMPLETE_BIPARTITE_MINUS_EDGE:
        return complete_bipartite_minus_edge(*p)
    if name in (G0, G1, G2, G3, BARBELL):
        _require(order >= 4, spec, "n ≥ 4")
        return {G0: g0, G1: g1, G2: g2, G3: g3, BARBELL: barbell}[name](order)
    if name == BARBELL_PLUS:
        _require(order >= 6, spec, "n ≥ 6")
        return barbell_plus(order)
    if name == BT:
        _require(order >= 3 and order % 2 == 1, spec, "odd n ≥ 3")
        return bt(order)
    if name == REMARK1:
        _require(order >= 4, spec, "n ≥ 4")
        return remark1(order)
    if name == BLOWUP:
        base = construct(spec.base, cap=cap)
        _require(base.n * p[0] <= cap, spec, f"|base|·k ≤ {cap}")
        return blowup(base, p[0], cap=cap)
    return {DIAMOND: diamond, HOUSE: house, PETERSEN: petersen}[name]()


# ---------------------------------------------------------------------------
# Property records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyProperties:
    label: str
    order: int
    size: int
    alpha: int
    min_degree: int
    connectivity: ConnectivityClass
    bipartite: bool
    triangle_free: bool
    triangles: int
    mismatches: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.mismatches


def expected_properties(spec: FamilySpec, cap: int = DEFAULT_ORDER_CAP) -> dict[str, object]:
    """Closed-form values for *spec*; keys absent here are not asserted."""
    name, p = spec.name, spec.params
    if name == COMPLETE:
        n = p[0]
        return {"order": n, "size": comb(n, 2), "alpha": 1, "min_degree": n - 1,
                "bipartite": n <= 2, "triangle_free": n <= 2}
    if name == CYCLE:
        n = p[0]
        return {"order": n, "size": n, "alpha": n // 2, "min_degree": 2,
                "bipartite": n % 2 == 0, "triangle_free": n > 3, "is_2_connected": True}
    if name == PATH:
        n = p[0]
        return {"order": n, "size": n - 1, "alpha": (n + 1) // 2, "bipartite": True,
                "triangle_free": True}
    if name == WHEEL:
        k = p[0]
        return {"order": k + 1, "size": 2 * k, "min_degree": 3, "is_2_connected": True}
    if name == COMPLETE_BIPARTITE:
        s, t = p
        return {"order": s + t, "size": s * t, "alpha": max(s, t), "min_degree": min(s, t),
                "bipartite": True, "triangle_free": True}
    if name == COMPLETE_BIPARTITE_MINUS_EDGE:
        s, t = p
        return {"order": s + t, "size": s * t - 1, "bipartite": True, "triangle_free": True}
    if name == G0:
        n = p[0]
        return {"order": n, "size": n * n // 4 - 1, "bipartite": True, "triangle_free": True}
    if name in (G1, G2, G3):
        n = p[0]
        return {"order": n, "size": n * n // 4 - 2, "bipartite": True, "triangle_free": True}
    if name == BARBELL:
        n = p[0]
        a, b = n // 2, n - n // 2
        return {"order": n, "size": comb(a, 2) + comb(b, 2) + 1, "alpha": 2,
                "is_connected": True, "is_2_connected": False}
    if name == BARBELL_PLUS:
        n = p[0]
        a, b = n // 2, n - n // 2
        return {"order": n, "size": comb(a, 2) + comb(b, 2) + 2, "alpha": 2,
                "is_2_connected": True}
    if name == BLOWUP:
        base = construct(spec.base, cap=cap)
        k = p[0]
        out: dict[str, object] = {"order": base.n * k, "size": k * k * base.size}
        if base.n:
            out["min_degree"] = k * min_degree(base)
        if is_triangle_free(base):
            out["triangle_free"] = True
        return out
    if name == BT:
        n = p[0]
        m = (n - 1) // 2
        out = {"order": n, "size": m * m + 2, "bipartite": False}
        if n >= 5:
            out["triangles"] = 1
        return out
    if name == REMARK1:
        n = p[0]
        return {"order": n, "size": 2 * (n - 2) + comb(n - 3, 2), "is_2_connected": True}
    if name == DIAMOND:
        return {"order": 4, "size": 5, "triangles": 2}
    if name == HOUSE:
        return {"order": 5, "size": 6, "triangles": 1, "is_2_connected": True}
    if name == PETERSEN:
        return {"order": 10, "size": 15, "alpha": 4, "min_degree": 3,
                "bipartite": False, "triangle_free": True}
    return {}


def family_properties(spec: FamilySpec, *, cap: int = DEFAULT_ORDER_CAP) -> FamilyProperties:
    """Compute the regression record of *spec* and compare it with the closed forms."""
    g = construct(spec, cap=cap)
    conn = connectivity_class(g)
    record = {
        "order": g.n,
        "size": g.size,
        "alpha": independence_number(g),
        "min_degree": min_degree(g) if g.n else 0,
        "bipartite": is_bipartite(g),
        "triangle_free": is_triangle_free(g),
        "triangles": count_triangles(g),
        "is_connected": conn.is_connected,
        "is_2_connected": conn.is_2_connected,
    }
    mismatches = tuple(
        f"{key}: expected {want}, computed {record[key]}"
        for key, want in expected_properties(spec, cap).items()
        if record[key] != want
    )
    return FamilyProperties(
        label=spec.label(),
        order=g.n,
        size=g.size,
        alpha=record["alpha"],
        min_degree=record["min_degree"],
        connectivity=conn,
        bipartite=record["bipartite"],
        triangle_free=record["triangle_free"],
        triangles=record["triangles"],
        mismatches=mismatches,
    )

