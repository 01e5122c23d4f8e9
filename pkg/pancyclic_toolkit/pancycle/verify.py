"""Exhaustive verification checks and conjecture searches.

Each check sweeps a generated universe, order by order, and accumulates a raw
``VerificationReport`` for one shard.  ``finalize`` runs after shard reports
are combined: it applies the check's global expectations (extremal classes,
witness existence, pinned universe sizes) and sets the status.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable, Iterator

from . import families as F
from . import graph as G
from .cycles import (
    all_edge_spectra,
    hamilton_count,
    has_pancyclic_edge,
    is_edge_pancyclic,
    is_hamiltonian,
    is_pancyclic,
    is_vertex_pancyclic,
)
from .enumeration import Shard, generate
from .errors import CheckSpecError, PancycleError
from .graph import Graph
from .invariants import (
    connectivity_class,
    independence_number,
    is_2_connected,
    is_bipartite,
    is_st_graph,
    is_triangle_free,
    min_degree,
)
from .iso import canonical_form, canonical_graph
from .predicates import (
    PrunePredicate,
    connected,
    min_degree_at_least,
    st_closed,
    triangle_free,
    two_connected,
)
from .reports import (
    COUNTEREXAMPLE,
    INCOMPLETE,
    PASS,
    VIOLATION,
    VerificationReport,
    combine,
    seal,
)
from .settings import (
    DEFAULT_ORDER_CAP,
    EXIT_COUNTEREXAMPLE,
    EXIT_INCOMPLETE,
    EXIT_PASS,
    EXIT_VIOLATION,
    GRAPH_COUNTS,
    MAX_ORDER_CAP,
)

log = logging.getLogger(__name__)

Stop = Callable[[], bool]

# Universe names for size pinning.
ALL_GRAPHS = "all"
TRIANGLE_FREE = "triangle_free"

# Classes of triangle-free graphs of order n (n = 6..10).
PINNED_UNIVERSES: dict[tuple[str, int], int] = {
    (TRIANGLE_FREE, 6): 38,
    (TRIANGLE_FREE, 7): 107,
    (TRIANGLE_FREE, 8): 410,
    (TRIANGLE_FREE, 9): 1897,
    (TRIANGLE_FREE, 10): 12172,
    **{(ALL_GRAPHS, n): GRAPH_COUNTS[n] for n in range(1, 10)},
}

# ---------------------------------------------------------------------------
# Spec and budget
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    orders: tuple[int, ...] = ()
    budget_graphs: int | None = None
    budget_seconds: float | None = None
    params: dict[str, Any] = field(default_factory=dict)
    cap: int = DEFAULT_ORDER_CAP


class Budget:
    """Graph-count and wall-clock allowance for one worker."""

    def __init__(self, graphs: int | None = None, seconds: float | None = None):
        self.graphs = graphs
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.used = 0

    def spend(self) -> bool:
        if self.graphs is not None and self.used >= self.graphs:
            return False
        if self.expired():
            return False
        self.used += 1
        return True

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def canonical_g6(g: Graph) -> str:
    """graph6 of the canonical representative, identical across relabellings."""
    return G.to_graph6(canonical_graph(g))


def _key(g: Graph) -> str:
    return canonical_form(g).hex()


def _st42(
    n: int, shard: Shard, stop: Stop, filters: Iterable[PrunePredicate] = ()
) -> Iterator[Graph]:
    return generate(n, [st_closed(4, 2)], shard, filters=list(filters), stop=stop)


def _triangle_free(n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return generate(n, [triangle_free()], shard, stop=stop)


def _all(n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return generate(n, [], shard, stop=stop)


def _dense_floor(n: int) -> int:
    return (n - 1) ** 2 // 4 + 2


def _nonbipartite_hamiltonian_dense(g: Graph) -> bool:
    n = g.n
    return (
        n >= 3
        and g.size >= _dense_floor(n)
        and not is_bipartite(g)
        and is_hamiltonian(g)
    )


def _kk(a: int, b: int) -> Graph:
    """K_a + K_b."""
    return G.disjoint_union(F.complete(a), F.complete(b))


# ---------------------------------------------------------------------------
# Per-graph visitors
#
# A visitor receives (report, n, g) and records whatever the check needs.
# ---------------------------------------------------------------------------

Visitor = Callable[[VerificationReport, int, Graph], None]


def _visit_short_cycle_edge(report: VerificationReport, n: int, g: Graph) -> None:
    spectra = all_edge_spectra(g)
    if not any(s.covers((3, 4, 5)) for s in spectra.values()):
        report.violations.append(canonical_g6(g))


def _visit_pancyclic_edge(report: VerificationReport, n: int, g: Graph) -> None:
    if not has_pancyclic_edge(g):
        report.violations.append(canonical_g6(g))
    if is_hamiltonian(g):
        report.fact(n, "hamiltonian")
    if is_pancyclic(g):
        report.fact(n, "pancyclic")


def _visit_hamiltonian_pancyclic(report: VerificationReport, n: int, g: Graph) -> None:
    ham = is_hamiltonian(g)
    pan = n >= 7 and is_pancyclic(g)
    report.fact(n, "hamiltonian", int(ham))
    report.fact(n, "pancyclic", int(pan))
    if not ham or (n >= 7 and not pan):
        report.violations.append(canonical_g6(g))


def _visit_not_uniquely_hamiltonian(report: VerificationReport, n: int, g: Graph) -> None:
    if hamilton_count(g, cap=2).count_capped == 1:
        report.violations.append(canonical_g6(g))


def _visit_uniquely_hamiltonian(report: VerificationReport, n: int, g: Graph) -> None:
    if hamilton_count(g, cap=2).count_capped == 1:
        code = canonical_g6(g)
        report.witnesses.append(code)
        report.details[code] = {"hamilton_cycles": 1, "size": g.size}


def _visit_forbidden(report: VerificationReport, n: int, g: Graph) -> None:
    # Generation already restricts to triangle-free [4,2]-graphs with δ ≥ 2.
    report.violations.append(canonical_g6(g))


def _visit_max_size(report: VerificationReport, n: int, g: Graph) -> None:
    report.offer_extremal(n, "max", g.size, _key(g))


def _visit_dense_triangle_free(report: VerificationReport, n: int, g: Graph) -> None:
    # g is triangle-free, so any dense nonbipartite g breaks the bound.
    if 4 * g.size > (n - 1) ** 2 + 4 and not is_bipartite(g):
        report.violations.append(canonical_g6(g))


def _visit_near_maximum(report: VerificationReport, n: int, g: Graph) -> None:
    top = n * n // 4
    if g.size in (top - 1, top - 2):
        report.add_class(n, g.size, _key(g))


def _visit_min_size(report: VerificationReport, n: int, g: Graph) -> None:
    report.offer_extremal(n, "min", g.size, _key(g))


def _visit_edge_search(report: VerificationReport, n: int, g: Graph) -> None:
    if not _nonbipartite_hamiltonian_dense(g):
        return
    report.fact(n, "candidates")
    if has_pancyclic_edge(g):
        return
    code = canonical_g6(g)
    if n % 2 == 1 and _key(g) == _key(F.bt(n)):
        report.witnesses.append(code)
        report.details[code] = {"excluded": "BT", "size": g.size}
    else:
        report.counterexamples.append(code)
        report.details[code] = {"size": g.size}


def _visit_dense_pancyclic(report: VerificationReport, n: int, g: Graph) -> None:
    if not _nonbipartite_hamiltonian_dense(g):
        return
    report.fact(n, "candidates")
    if not is_pancyclic(g):
        report.violations.append(canonical_g6(g))


def _visit_vertex_search(report: VerificationReport, n: int, g: Graph) -> None:
    # A vertex-pancyclic graph without a pancyclic edge has δ ≥ 3.
    if n < 4 or min_degree(g) < 3 or not is_hamiltonian(g):
        return
    report.fact(n, "candidates")
    if is_vertex_pancyclic(g) and not has_pancyclic_edge(g):
        code = canonical_g6(g)
        report.witnesses.append(code)
        report.details[code] = {"kappa_lower": connectivity_class(g).kappa_lower}


def _min_induced(g: Graph, s: int) -> int:
    return min(G.induced_size(g, c) for c in combinations(range(g.n), s))


def _visit_facts(report: VerificationReport, n: int, g: Graph) -> None:
    bad = False
    for s in range(1, n):
        m = _min_induced(g, s)
        if not is_st_graph(g, s, m) or is_st_graph(g, s, m + 1):
            bad = True
        # Every [s,t]-graph with t ≥ 1 is an [s+1,t+1]-graph.
        if m >= 1 and not is_st_graph(g, s + 1, m + 1):
            bad = True
    alpha = independence_number(g)
    for k in range(1, n):
        if (alpha <= k) != is_st_graph(g, k + 1, 1):
            bad = True
    if n >= 3 and is_edge_pancyclic(g):
        report.fact(n, "edge_pancyclic")
        if not is_vertex_pancyclic(g):
            bad = True
    if bad:
        report.violations.append(canonical_g6(g))


# ---------------------------------------------------------------------------
# Fixtures (shard 0 only)
# ---------------------------------------------------------------------------


def _fixture_blowup_c5(report: VerificationReport) -> None:
    g = F.blowup(F.cycle(5), 3)
    report.count(g.n)
    report.fact(g.n, "triangle_free", int(is_triangle_free(g)))
    report.fact(g.n, "min_degree_6", int(min_degree(g) == 6))
    report.fact(g.n, "st_8_6", int(is_st_graph(g, 8, 6)))


def _fixture_remark1(report: VerificationReport, n: int) -> None:
    g = F.remark1(n)
    report.count(n)
    checks = {
        "two_connected": is_2_connected(g),
        "st_4_2": is_st_graph(g, 4, 2),
        "pancyclic": is_pancyclic(g),
        "not_vertex_pancyclic": not is_vertex_pancyclic(g),
    }
    for name, ok in checks.items():
        report.fact(n, name, int(ok))
    if not all(checks.values()):
        report.violations.append(canonical_g6(g))


def _fixture_certificate(report: VerificationReport, code: str, cap: int) -> None:
    g = G.from_graph6(code, cap=cap)
    report.count(g.n)
    vertex_pan = is_vertex_pancyclic(g)
    edge_free = not has_pancyclic_edge(g)
    report.fact(g.n, "vertex_pancyclic", int(vertex_pan))
    report.fact(g.n, "no_pancyclic_edge", int(edge_free))
    if vertex_pan and edge_free:
        canon = canonical_g6(g)
        report.witnesses.append(canon)
        report.details[canon] = {"kappa_lower": connectivity_class(g).kappa_lower}
    else:
        canon = canonical_g6(g)
        report.violations.append(canon)
        report.details[canon] = {"vertex_pancyclic": vertex_pan, "no_pancyclic_edge": edge_free}


# ---------------------------------------------------------------------------
# Global expectations
# ---------------------------------------------------------------------------


def _expect_unique_extremal(
    report: VerificationReport, n: int, size: int, graph: Graph, name: str
) -> None:
    rec = report.extremal.get(str(n))
    if rec is None:
        report.failures.append(f"n={n}: empty universe")
        return
    if rec.size != size:
        report.failures.append(f"n={n}: extremal size {rec.size}, expected {size}")
    if rec.keys != [_key(graph)]:
        report.failures.append(
            f"n={n}: {rec.count} extremal class(es), expected exactly {name}"
        )


def _final_max_size(report: VerificationReport) -> None:
    for n in report.orders:
        _expect_unique_extremal(
            report, n, n * n // 4, F.complete_bipartite(n // 2, n - n // 2), "K⌊n/2⌋,⌈n/2⌉"
        )


def near_maximum_classes(n: int) -> dict[int, set[str]]:
    """Triangle-free classes of sizes ⌊n²/4⌋−1 and −2, as canonical keys."""
    top = n * n // 4
    one = {_key(F.g0(n))}
    two = {_key(F.g1(n)), _key(F.g2(n)), _key(F.g3(n))}
    if n % 2 == 0:
        one.add(_key(F.complete_bipartite(n // 2 - 1, n // 2 + 1)))
        two.add(_key(F.complete_bipartite_minus_edge(n // 2 - 1, n // 2 + 1)))
    else:
        two.add(_key(F.complete_bipartite((n - 3) // 2, (n + 3) // 2)))
    return {top - 1: one, top - 2: two}


def _final_near_maximum(report: VerificationReport) -> None:
    for n in report.orders:
        found = report.classes.get(str(n), {})
        for size, want in near_maximum_classes(n).items():
            got = set(found.get(str(size), []))
            if got != want:
                report.failures.append(
                    f"n={n}, size {size}: {len(got)} class(es) found, expected {len(want)}"
                    f" ({len(got - want)} unexpected, {len(want - got)} missing)"
                )


def _final_two_cliques(report: VerificationReport) -> None:
    for n in report.orders:
        _expect_unique_extremal(
            report, n, (n - 1) ** 2 // 4, _kk(n // 2, n - n // 2), "K⌊n/2⌋+K⌈n/2⌉"
        )


def _final_barbell(report: VerificationReport) -> None:
    for n in report.orders:
        _expect_unique_extremal(report, n, (n - 1) ** 2 // 4 + 1, F.barbell(n), "B_n")


def _final_barbell_plus(report: VerificationReport) -> None:
    for n in report.orders:
        _expect_unique_extremal(report, n, (n - 1) ** 2 // 4 + 2, F.barbell_plus(n), "B_n+")


def _final_all_pancyclic(report: VerificationReport) -> None:
    for n in report.orders:
        total = report.universe.get(str(n), 0)
        facts = report.facts.get(str(n), {})
        for name in ("hamiltonian", "pancyclic"):
            if facts.get(name, 0) != total:
                report.failures.append(f"n={n}: {facts.get(name, 0)}/{total} graphs {name}")


def _final_witness_found(report: VerificationReport) -> None:
    if not report.witnesses:
        report.failures.append("no uniquely hamiltonian 2-connected [4,2]-graph found")


def _final_blowup_c5(report: VerificationReport) -> None:
    facts = report.facts.get("15", {})
    for name in ("triangle_free", "min_degree_6", "st_8_6"):
        if facts.get(name) != 1:
            report.failures.append(f"C5^(3): {name} does not hold")


def _final_bt_found(report: VerificationReport) -> None:
    for n in report.orders:
        if n % 2 == 1 and canonical_g6(F.bt(n)) not in report.witnesses:
            report.failures.append(f"n={n}: BT({n}) was not found among the hits")


def _final_nothing(report: VerificationReport) -> None:
    return None


# ---------------------------------------------------------------------------
# Check table
# ---------------------------------------------------------------------------

THEOREM = "theorem"
EXISTENCE = "existence"
SEARCH = "search"
OPEN_PROBLEM = "open-problem"

Universe = Callable[[CheckSpec, int, Shard, Stop], Iterator[Graph]]


@dataclass(frozen=True)
class Check:
    check_id: str
    title: str
    kind: str
    allowed: tuple[int, ...]
    default: tuple[int, ...]
    universe: Universe | None
    visit: Visitor | None
    final: Callable[[VerificationReport], None] = _final_nothing
    pinned: str | None = None


def _u_st42(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return _st42(n, shard, stop)


def _u_st42_connected(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return _st42(n, shard, stop, [connected()])


def _u_st42_two_connected(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return _st42(n, shard, stop, [two_connected()])


def _u_triangle_free_st42(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return generate(
        n, [st_closed(4, 2), triangle_free()], shard, filters=[min_degree_at_least(2)], stop=stop
    )


def _u_triangle_free(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return _triangle_free(n, shard, stop)


def _u_all(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    return _all(n, shard, stop)


def _u_open_problem(spec: CheckSpec, n: int, shard: Shard, stop: Stop) -> Iterator[Graph]:
    p = spec.params
    filters = {"any": [], "connected": [connected()], "two_connected": [two_connected()]}
    return generate(
        n, [st_closed(p["s"], p["t"])], shard, filters=filters[p["connectivity"]], stop=stop
    )


CHECKS: dict[str, Check] = {
    c.check_id: c
    for c in [
        Check("L3_small", "no triangle-free [4,2]-graph with δ≥2; C5^(3) is a triangle-free [8,6]-graph",
              THEOREM, (7, 8), (7, 8), _u_triangle_free_st42, _visit_forbidden, _final_blowup_c5),
        Check("L4", "2-connected [4,2]-graphs have a {3,4,5}-cyclic edge",
              THEOREM, (7, 8), (7, 8), _u_st42_two_connected, _visit_short_cycle_edge),
        Check("T5", "2-connected [4,2]-graphs have a pancyclic edge",
              THEOREM, (7, 8), (7, 8), _u_st42_two_connected, _visit_pancyclic_edge, _final_all_pancyclic),
        Check("L6", "triangle-free maximum size ⌊n²/4⌋, unique K⌊n/2⌋,⌈n/2⌉",
              THEOREM, (6, 7, 8, 9, 10), (6, 7, 8, 9), _u_triangle_free, _visit_max_size,
              _final_max_size, TRIANGLE_FREE),
        Check("L7", "nonbipartite graphs with e > (n−1)²/4+1 have a triangle",
              THEOREM, (6, 7, 8, 9, 10), (6, 7, 8, 9), _u_triangle_free, _visit_dense_triangle_free,
              pinned=TRIANGLE_FREE),
        Check("L8", "triangle-free classes of size ⌊n²/4⌋−1 and −2",
              THEOREM, (8, 9, 10), (8, 9), _u_triangle_free, _visit_near_maximum, _final_near_maximum,
              TRIANGLE_FREE),
        Check("T9", "[4,2]-graphs: minimum size ⌊(n−1)²/4⌋, unique K⌊n/2⌋+K⌈n/2⌉",
              THEOREM, (7, 8, 9), (7, 8, 9), _u_st42, _visit_min_size, _final_two_cliques),
        Check("T10", "connected [4,2]-graphs: minimum size ⌊(n−1)²/4⌋+1, unique B_n",
              THEOREM, (8, 9), (8, 9), _u_st42_connected, _visit_min_size, _final_barbell),
        Check("T11", "2-connected [4,2]-graphs: minimum size ⌊(n−1)²/4⌋+2, unique B_n+",
              THEOREM, (10,), (10,), _u_st42_two_connected, _visit_min_size, _final_barbell_plus),
        Check("T12", "2-connected [4,2]-graphs of order ≥ 8 are not uniquely hamiltonian",
              THEOREM, (8, 9), (8, 9), _u_st42_two_connected, _visit_not_uniquely_hamiltonian),
        Check("FIG2", "a uniquely hamiltonian 2-connected [4,2]-graph of order 7 exists",
              EXISTENCE, (7,), (7,), _u_st42_two_connected, _visit_uniquely_hamiltonian, _final_witness_found),
        Check("R1", "(2K1)∨(K1+K_{n−3}) is 2-connected, [4,2], pancyclic, not vertex-pancyclic",
              THEOREM, (7, 8, 9, 10), (7, 8, 9, 10), None, None),
        Check("T1T2", "2-connected [4,2]-graphs are hamiltonian (n≥6) and pancyclic (n≥7)",
              THEOREM, (6, 7, 8), (6, 7, 8), _u_st42_two_connected, _visit_hamiltonian_pancyclic),
        Check("T13", "dense nonbipartite hamiltonian graphs are pancyclic",
              THEOREM, (5, 6, 7, 8), (5, 6, 7, 8), _u_all, _visit_dense_pancyclic, pinned=ALL_GRAPHS),
        Check("FACTS", "[s,t] ⇒ [s+1,t+1]; α≤k ⇔ [k+1,1]; edge- ⇒ vertex-pancyclic",
              THEOREM, (3, 4, 5, 6, 7), (4, 5, 6, 7), _u_all, _visit_facts, pinned=ALL_GRAPHS),
        Check("C2_search", "dense nonbipartite hamiltonian graphs without a pancyclic edge",
              SEARCH, (7, 8), (7, 8), _u_all, _visit_edge_search, _final_bt_found, ALL_GRAPHS),
        Check("P1_probe", "minimum size of [s,t]-graphs",
              OPEN_PROBLEM, tuple(range(1, 15)), (), _u_open_problem, _visit_min_size),
        Check("P3_search", "vertex-pancyclic graphs without a pancyclic edge",
              SEARCH, (4, 5, 6, 7, 8), (6, 7), _u_all, _visit_vertex_search, pinned=ALL_GRAPHS),
    ]
}


def list_checks() -> list[Check]:
    return list(CHECKS.values())


# ---------------------------------------------------------------------------
# Spec resolution
# ---------------------------------------------------------------------------


def make_spec(
    check_id: str,
    orders: Iterable[int] | None = None,
    *,
    budget_graphs: int | None = None,
    budget_seconds: float | None = None,
    params: dict[str, Any] | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> CheckSpec:
    """Validate a request against the feasibility table and fill in defaults."""
    check = CHECKS.get(check_id)
    if check is None:
        raise CheckSpecError(f"unknown check {check_id!r}; checks: {', '.join(CHECKS)}")
    if not 1 <= cap <= MAX_ORDER_CAP:
        raise CheckSpecError(f"order cap must be in 1..{MAX_ORDER_CAP}, got {cap}")
    params = dict(params or {})
    requested = tuple(sorted(set(orders))) if orders else ()

    if check_id == "P3_search" and params.get("certificate"):
        code = params["certificate"]
        try:
            n = G.from_graph6(code, cap=cap).n
        except PancycleError as exc:
            raise CheckSpecError(f"bad certificate: {exc}") from exc
        if n < 4:
            raise CheckSpecError("a certificate graph needs order at least 4")
        requested = (n,)
    else:
        params.pop("certificate", None)
        requested = requested or check.default
        if not requested:
            raise CheckSpecError(f"{check_id} needs explicit orders (--n)")
        outside = [n for n in requested if n not in check.allowed]
        if outside:
            raise CheckSpecError(
                f"{check_id} is feasible for orders {list(check.allowed)}, not {outside}"
            )

    if check_id == "P1_probe":
        s, t = params.get("s"), params.get("t")
        if s is None or t is None:
            raise CheckSpecError("P1_probe needs s and t")
        if s < 1 or t < 0:
            raise CheckSpecError(f"[s,t] needs s ≥ 1 and t ≥ 0, got [{s},{t}]")
        if min(requested) < s:
            raise CheckSpecError(f"an [{s},{t}]-graph has order at least {s}")
        params.setdefault("connectivity", "any")
        if params["connectivity"] not in ("any", "connected", "two_connected"):
            raise CheckSpecError(f"unknown connectivity {params['connectivity']!r}")
        params = {"s": s, "t": t, "connectivity": params["connectivity"]}
    elif check_id != "P3_search" and params:
        raise CheckSpecError(f"{check_id} takes no parameters, got {sorted(params)}")

    above = [n for n in requested if n > cap]
    if above:
        raise CheckSpecError(f"orders {above} exceed the order cap {cap}")
    return CheckSpec(check_id, requested, budget_graphs, budget_seconds, params, cap)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------


def run_shard(spec: CheckSpec, shard: Shard | None = None) -> VerificationReport:
    """Sweep one shard and return the raw (unfinalised) report."""
    shard = shard or Shard(0, 1)
    check = CHECKS[spec.check_id]
    report = VerificationReport(spec.check_id, dict(spec.params), list(spec.orders))
    report.shards = [str(shard)]
    budget = Budget(spec.budget_graphs, spec.budget_seconds)
    started = time.perf_counter()

    if check.check_id == "L3_small" and shard.index == 0:
        _fixture_blowup_c5(report)
    if check.check_id == "P3_search" and spec.params.get("certificate"):
        if shard.index == 0:
            _fixture_certificate(report, spec.params["certificate"], spec.cap)
        report.wall_time = time.perf_counter() - started
        return report

    for n in spec.orders:
        report.universe.setdefault(str(n), 0)
        t0 = time.perf_counter()
        if check.universe is None:
            if shard.index == 0:
                _fixture_remark1(report, n)
            continue
        for g in check.universe(spec, n, shard, budget.expired):
            if not budget.spend():
                report.incomplete = True
                log.warning(
                    "%s n=%d shard %s: budget exhausted after %d graphs",
                    spec.check_id, n, shard, budget.used,
                )
                break
            report.count(n)
            check.visit(report, n, g)
        if not report.incomplete and budget.expired():
            # The generator stopped on the deadline, possibly between emissions.
            report.incomplete = True
            log.warning(
                "%s n=%d shard %s: time budget exhausted after %d graphs",
                spec.check_id, n, shard, budget.used,
            )
        log.info(
            "%s n=%d shard %s: %d graphs in %.2fs",
            spec.check_id, n, shard, report.universe[str(n)], time.perf_counter() - t0,
        )
        if report.incomplete:
            break

    report.violations.sort()
    report.witnesses.sort()
    report.counterexamples.sort()
    report.wall_time = time.perf_counter() - started
    return report


def covers_all_shards(shards: list[str]) -> bool:
    parsed = [tuple(int(x) for x in s.split("/")) for s in shards]
    totals = {k for _, k in parsed}
    if len(totals) != 1:
        return False
    (k,) = totals
    return sorted(i for i, _ in parsed) == list(range(k))


def finalize(report: VerificationReport) -> VerificationReport:
    """Apply the check's global expectations and set ``status`` and ``digest``."""
    check = CHECKS[report.check_id]
    report.failures = []
    complete = covers_all_shards(report.shards) and not report.incomplete
    if complete:
        check.final(report)
        if check.pinned is not None and not report.params.get("certificate"):
            for n in report.orders:
                want = PINNED_UNIVERSES.get((check.pinned, n))
                got = report.universe.get(str(n), 0)
                if want is not None and got != want:
                    report.failures.append(
                        f"n={n}: {got} {check.pinned} graphs examined, pinned {want}"
                    )

    if report.counterexamples:
        report.status = COUNTEREXAMPLE
    elif report.violations or report.failures:
        report.status = VIOLATION
    elif not complete:
        report.status = INCOMPLETE
    else:
        report.status = PASS
    return seal(report)


def run_check(spec: CheckSpec, shard: Shard | None = None) -> VerificationReport:
    return finalize(run_shard(spec, shard))


def merge_reports(reports: list[VerificationReport]) -> VerificationReport:
    """Combine shard reports and finalise the result."""
    return finalize(combine(reports))


EXIT_CODES = {
    PASS: EXIT_PASS,
    VIOLATION: EXIT_VIOLATION,
    INCOMPLETE: EXIT_INCOMPLETE,
    COUNTEREXAMPLE: EXIT_COUNTEREXAMPLE,
}


def exit_code(report: VerificationReport) -> int:
    return EXIT_CODES[report.status]
