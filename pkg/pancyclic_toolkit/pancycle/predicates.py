"""Predicate registry — hereditary pruners and emission-time filters.

A hereditary predicate holds for every induced subgraph of order at least its
threshold whenever it holds for the whole graph, so generation may discard an
intermediate graph that fails it together with its whole subtree.  Each
pruner also supplies an *extension test*: given the parent graph it returns a
callable deciding, from the neighbourhood mask of a new vertex alone, whether
the child still satisfies the predicate.  Only subsets containing the new
vertex are examined.

Filters (connectivity, size bounds, hamiltonicity …) are not hereditary and
are only ever applied to graphs of the final order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from typing import Callable

from .cycles import is_hamiltonian
from .errors import PredicateMisuseError
from .graph import Graph, induced_size, mask_of
from .invariants import (
    alpha_at_most,
    is_2_connected,
    is_bipartite,
    is_connected,
    is_st_graph,
    is_triangle_free,
    min_degree,
)

Extension = Callable[[int], bool]

# ---------------------------------------------------------------------------
# Predicate type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrunePredicate:
    name: str
    holds: Callable[[Graph], bool]
    hereditary: bool = False
    threshold: int = 0
    extension: Callable[[Graph], Extension] | None = None
    # Cuts the tree enough to earn the larger generation order limit.
    shrinks: bool = False

    def __call__(self, g: Graph) -> bool:
        return self.holds(g)

    def extender(self, parent: Graph) -> Extension | None:
        """Extension test for children of *parent*, or None when it cannot fail yet."""
        if self.extension is None or parent.n + 1 < self.threshold:
            return None
        return self.extension(parent)


# ---------------------------------------------------------------------------
# Hereditary checks and their extension tests
# ---------------------------------------------------------------------------


def _st_holds(s: int, t: int, g: Graph) -> bool:
    return g.n < s or is_st_graph(g, s, t)


def _st_extension(s: int, t: int, parent: Graph) -> Extension:
    # The new vertex z plus an (s-1)-set T is sparse iff |N(z) ∩ T| < t - e(T).
    constraints = []
    for subset in combinations(range(parent.n), s - 1):
        mask = mask_of(subset)
        missing = t - induced_size(parent, mask)
        if missing > 0:
            constraints.append((mask, missing))

    def accepts(neighborhood: int) -> bool:
        for mask, missing in constraints:
            if (neighborhood & mask).bit_count() < missing:
                return False
        return True

    return accepts


def _triangle_free_extension(parent: Graph) -> Extension:
    adj = parent.adj

    def accepts(neighborhood: int) -> bool:
        rest = neighborhood
        while rest:
            low = rest & -rest
            if adj[low.bit_length() - 1] & neighborhood:
                return False
            rest ^= low
        return True

    return accepts


def _alpha_holds(k: int, g: Graph) -> bool:
    return alpha_at_most(g, k)


# ---------------------------------------------------------------------------
# Filters
# ---------------------------------------------------------------------------


def _min_degree_at_least(d: int, g: Graph) -> bool:
    return g.n > 0 and min_degree(g) >= d


def _size_between(lo: int, hi: int, g: Graph) -> bool:
    return lo <= g.size <= hi


def _nonbipartite(g: Graph) -> bool:
    return not is_bipartite(g)


def _hamiltonian(g: Graph) -> bool:
    return g.n >= 3 and is_hamiltonian(g)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def st_closed(s: int, t: int) -> PrunePredicate:
    """[s,t]-graph; induced-subgraph closed from order *s* on.

    It earns the larger order limit only when t ≥ 2 and 2t ≥ s, so that every
    s-set carries at least one edge per two vertices.
    """
    return PrunePredicate(
        f"st_closed:{s}:{t}",
        partial(_st_holds, s, t),
        hereditary=True,
        threshold=s,
        extension=partial(_st_extension, s, t),
        shrinks=t >= 2 and 2 * t >= s,
    )


def triangle_free() -> PrunePredicate:
    return PrunePredicate(
        "triangle_free",
        is_triangle_free,
        hereditary=True,
        threshold=3,
        extension=_triangle_free_extension,
    )


def alpha_at_most_k(k: int) -> PrunePredicate:
    """α ≤ k, i.e. [k+1,1]; the extension test is the [k+1,1] one."""
    return PrunePredicate(
        f"alpha_at_most:{k}",
        partial(_alpha_holds, k),
        hereditary=True,
        threshold=k + 1,
        extension=partial(_st_extension, k + 1, 1),
        shrinks=k <= 1,
    )


def connected() -> PrunePredicate:
    return PrunePredicate("connected", is_connected)


def two_connected() -> PrunePredicate:
    return PrunePredicate("two_connected", is_2_connected)


def min_degree_at_least(d: int) -> PrunePredicate:
    return PrunePredicate(f"min_degree_at_least:{d}", partial(_min_degree_at_least, d))


def min_size_at_least(m: int) -> PrunePredicate:
    return PrunePredicate(f"min_size_at_least:{m}", partial(_size_between, m, 1 << 30))


def max_size_at_most(m: int) -> PrunePredicate:
    return PrunePredicate(f"max_size_at_most:{m}", partial(_size_between, 0, m))


def size_between(lo: int, hi: int) -> PrunePredicate:
    return PrunePredicate(f"size_between:{lo}:{hi}", partial(_size_between, lo, hi))


def nonbipartite() -> PrunePredicate:
    return PrunePredicate("nonbipartite", _nonbipartite)


def hamiltonian() -> PrunePredicate:
    return PrunePredicate("hamiltonian", _hamiltonian)


# ---------------------------------------------------------------------------
# String forms (order matters: first match wins)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Rule:
    pattern: re.Pattern[str]
    make: Callable[..., PrunePredicate]


_RULES: list[_Rule] = [
    _Rule(re.compile(r"^st_closed:(\d+):(\d+)$"), st_closed),
    _Rule(re.compile(r"^triangle_free$"), triangle_free),
    _Rule(re.compile(r"^alpha_at_most:(\d+)$"), alpha_at_most_k),
    _Rule(re.compile(r"^connected$"), connected),
    _Rule(re.compile(r"^two_connected$"), two_connected),
    _Rule(re.compile(r"^min_degree_at_least:(\d+)$"), min_degree_at_least),
    _Rule(re.compile(r"^min_size_at_least:(\d+)$"), min_size_at_least),
    _Rule(re.compile(r"^max_size_at_most:(\d+)$"), max_size_at_most),
    _Rule(re.compile(r"^size_between:(\d+):(\d+)$"), size_between),
    _Rule(re.compile(r"^nonbipartite$"), nonbipartite),
    _Rule(re.compile(r"^hamiltonian$"), hamiltonian),
]


def parse_predicate(text: str) -> PrunePredicate:
    s = text.strip()
    for rule in _RULES:
        m = rule.pattern.match(s)
        if m is not None:
            return rule.make(*(int(x) for x in m.groups()))
    raise PredicateMisuseError(
        f"unknown predicate {text!r}; known: {', '.join(get_predicate_forms())}"
    )


def parse_pruner(text: str) -> PrunePredicate:
    pred = parse_predicate(text)
    require_hereditary([pred])
    return pred


def require_hereditary(preds: list[PrunePredicate]) -> None:
    for p in preds:
        if not p.hereditary:
            raise PredicateMisuseError(
                f"{p.name} is not hereditary and can only be used as an emission filter"
            )


def get_predicate_forms() -> list[str]:
    return [
        r.pattern.pattern.strip("^$").replace(r"(\d+)", "N")
        for r in _RULES
    ]


def get_hereditary_names() -> list[str]:
    return ["st_closed:S:T", "triangle_free", "alpha_at_most:K"]
