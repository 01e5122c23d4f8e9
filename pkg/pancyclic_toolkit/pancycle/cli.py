"""CLI entry-point for pancycle."""

from __future__ import annotations

import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, List, Optional

import click
import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import families, reports, runner, verify
from . import graph as G
from .cycles import (
    all_edge_spectra,
    edge_cycle_spectrum,
    graph_cycle_spectrum,
    hamilton_count,
    is_pancyclic,
    is_vertex_pancyclic,
    pancyclic_edges,
    vertex_cycle_spectrum,
)
from .enumeration import Shard, ingest_graph6, parse_shard
from .errors import PancycleError
from .invariants import (
    connectivity_class,
    independence_number,
    is_bipartite,
    is_st_graph,
    is_triangle_free,
    min_degree,
    st_violation,
)
from .predicates import get_predicate_forms, parse_predicate, parse_pruner
from .settings import (
    DEFAULT_BUDGET_GRAPHS,
    DEFAULT_BUDGET_SECONDS,
    DEFAULT_HAMILTON_CAP,
    DEFAULT_JOBS,
    DEFAULT_ORDER_CAP,
    EXIT_USAGE,
    EXIT_VIOLATION,
    SPECTRUM_MAX_ORDER,
)

app = typer.Typer(
    name="pancycle",
    help="pancycle — [s,t]-graphs, pancyclic edges and exhaustive verification.",
    add_completion=False,
    no_args_is_help=True,
)

console = Console(stderr=True)
log = logging.getLogger(__name__)

SEARCH_CHECKS = ("C2_search", "P1_probe", "P3_search")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress at DEBUG level."),
):
    """Analyse graphs, build named families, enumerate universes, verify claims."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


# ─────────────────────────── helpers ──────────────────────────────────────


@contextmanager
def _usage_errors() -> Iterator[None]:
    """Turn library errors into a red message and exit code 3."""
    try:
        yield
    except (PancycleError, click.UsageError) as exc:
        console.print(f"[bold red]✘ ERROR[/bold red]  {exc}")
        raise typer.Exit(code=EXIT_USAGE) from exc


def _emit(record: Any, out: Optional[Path] = None) -> None:
    text = json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _shard(text: Optional[str]) -> Optional[Shard]:
    return parse_shard(text) if text else None


# ─────────────────────────── pancycle analyze ─────────────────────────────


def analyze_record(
    g: G.Graph,
    *,
    s: int = 4,
    t: int = 2,
    spectra: bool = False,
    hamilton_cap: int = DEFAULT_HAMILTON_CAP,
) -> dict[str, Any]:
    conn = connectivity_class(g)
    record: dict[str, Any] = {
        "graph6": G.to_graph6(g),
        "order": g.n,
        "size": g.size,
        "degree_sequence": G.degree_sequence(g),
        "alpha": independence_number(g),
        "min_degree": min_degree(g) if g.n else None,
        "connectivity": {
            "is_connected": conn.is_connected,
            "is_2_connected": conn.is_2_connected,
            "kappa_lower": conn.kappa_lower,
            "cut": list(conn.cut) if conn.cut is not None else None,
        },
        "bipartite": is_bipartite(g),
        "triangle_free": is_triangle_free(g),
    }
    st: dict[str, Any] = {"s": s, "t": t, "holds": None, "witness": None}
    if g.n >= s:
        witness = st_violation(g, s, t)
        st["holds"] = witness is None
        st["witness"] = list(witness) if witness is not None else None
    record["st"] = st
    record["is_4_2"] = is_st_graph(g, 4, 2) if g.n >= 4 else None

    if 3 <= g.n <= SPECTRUM_MAX_ORDER:
        edges = pancyclic_edges(g)
        ham = hamilton_count(g, cap=hamilton_cap)
        record["cycles"] = {
            "lengths": graph_cycle_spectrum(g).as_list(),
            "pancyclic": is_pancyclic(g),
            "vertex_pancyclic": is_vertex_pancyclic(g),
            "has_pancyclic_edge": bool(edges),
            "pancyclic_edges": [str(e) for e in edges],
            "hamilton_count": ham.count_capped,
            "hamilton_cap": ham.cap,
            "hamiltonian": ham.count_capped >= 1,
        }
        if spectra:
            record["edge_spectra"] = {
                str(e): spec.as_list() for e, spec in all_edge_spectra(g).items()
            }
    else:
        record["cycles"] = None
        if g.n > SPECTRUM_MAX_ORDER:
            log.warning("order %d is above %d: cycle data skipped", g.n, SPECTRUM_MAX_ORDER)
    return record


@app.command("analyze")
def cmd_analyze(
    graph: str = typer.Argument(..., help="graph6 string or family spec (e.g. BT:7)."),
    s: int = typer.Option(4, "--s", help="s of the [s,t] test."),
    t: int = typer.Option(2, "--t", help="t of the [s,t] test."),
    spectra: bool = typer.Option(False, "--spectra", help="Include every edge's cycle spectrum."),
    hamilton_cap: int = typer.Option(DEFAULT_HAMILTON_CAP, "--hamilton-cap", help="Stop counting Hamilton cycles here."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON record here."),
):
    """Print the property record of a graph as JSON."""
    with _usage_errors():
        g = families.parse_graph_argument(graph, cap=cap)
        record = analyze_record(g, s=s, t=t, spectra=spectra, hamilton_cap=hamilton_cap)
    _emit(record, out)
    console.print(f"[bold green]✔ ANALYZED[/bold green]  n={g.n} e={g.size}")


# ─────────────────────────── pancycle construct ───────────────────────────


@app.command("construct")
def cmd_construct(
    spec: str = typer.Argument(..., help="Family spec, e.g. G3:10, blowup:C5:3."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON record here."),
):
    """Build a named graph; print its graph6 and closed-form property check."""
    with _usage_errors():
        fam = families.parse_family_spec(spec)
        g = families.construct(fam, cap=cap)
        props = families.family_properties(fam, cap=cap)
    _emit({
        "label": props.label,
        "graph6": G.to_graph6(g),
        "order": props.order,
        "size": props.size,
        "alpha": props.alpha,
        "min_degree": props.min_degree,
        "kappa_lower": props.connectivity.kappa_lower,
        "bipartite": props.bipartite,
        "triangle_free": props.triangle_free,
        "triangles": props.triangles,
        "mismatches": list(props.mismatches),
    }, out)
    if not props.ok:
        for m in props.mismatches:
            console.print(f"[bold red]✘ MISMATCH[/bold red]  {m}")
        raise typer.Exit(code=EXIT_VIOLATION)
    console.print(f"[bold green]✔ BUILT[/bold green]  {props.label}  n={props.order} e={props.size}")


# ─────────────────────────── pancycle spectrum ────────────────────────────


@app.command("spectrum")
def cmd_spectrum(
    graph: str = typer.Argument(..., help="graph6 string or family spec."),
    edge: Optional[str] = typer.Option(None, "--edge", help="Edge u-v."),
    vertex: Optional[int] = typer.Option(None, "--vertex", help="Vertex index."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON record here."),
):
    """Cycle lengths through an edge, a vertex, or the whole graph."""
    with _usage_errors():
        g = families.parse_graph_argument(graph, cap=cap)
        if edge is not None and vertex is not None:
            raise click.UsageError("give at most one of --edge and --vertex")
        if edge is not None:
            try:
                u, v = (int(x) for x in edge.split("-"))
            except ValueError:
                raise click.UsageError(f"--edge must look like u-v, got {edge!r}") from None
            spec = edge_cycle_spectrum(g, (u, v))
        elif vertex is not None:
            spec = vertex_cycle_spectrum(g, vertex)
        else:
            spec = graph_cycle_spectrum(g)
    _emit({"subject": spec.subject, "order": g.n, "lengths": spec.as_list(), "full": spec.is_full()}, out)


# ─────────────────────────── pancycle enumerate ───────────────────────────


@app.command("enumerate")
def cmd_enumerate(
    n: Optional[int] = typer.Option(None, "--n", help="Order to generate."),
    prune: List[str] = typer.Option([], "--prune", help="Hereditary pruner, e.g. st_closed:4:2."),
    filters: List[str] = typer.Option([], "--filter", help="Emission filter, e.g. two_connected."),
    shard: Optional[str] = typer.Option(None, "--shard", help="Only shard i/k."),
    jobs: int = typer.Option(DEFAULT_JOBS, "--jobs", help="Worker processes."),
    ingest: Optional[Path] = typer.Option(None, "--ingest", help="Filter a graph6 file instead of generating."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write graph6 lines here."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
):
    """Print one graph6 line per isomorphism class (canonical, sorted)."""
    with _usage_errors():
        pruners = [parse_pruner(p) for p in prune]
        emission = [parse_predicate(f) for f in filters]
        if ingest is not None:
            if not ingest.exists():
                raise click.UsageError(f"no such file: {ingest}")
            lines = sorted(
                verify.canonical_g6(g)
                for g in ingest_graph6(ingest, pruners + emission, cap=cap)
            )
        else:
            if n is None:
                raise click.UsageError("--n is required unless --ingest is given")
            lines = runner.run_enumeration(
                n, pruners, emission, jobs=jobs, shard=_shard(shard), cap=cap
            )
    text = "".join(line + "\n" for line in lines)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    console.print(f"[bold green]✔ {len(lines)} graphs[/bold green]")


# ─────────────────────────── pancycle verify ──────────────────────────────


def _print_checks() -> None:
    table = Table(title="Checks", show_lines=False, padding=(0, 1))
    table.add_column("id", style="cyan")
    table.add_column("kind")
    table.add_column("orders", style="dim")
    table.add_column("claim", max_width=60)
    for c in verify.list_checks():
        table.add_row(c.check_id, c.kind, ",".join(map(str, c.allowed)), c.title)
    console.print(table)


def _print_summary(report: reports.VerificationReport) -> None:
    style = {
        reports.PASS: "green",
        reports.VIOLATION: "red",
        reports.INCOMPLETE: "yellow",
        reports.COUNTEREXAMPLE: "magenta",
    }[report.status]
    console.print(
        f"[bold {style}]{'✔' if report.status == reports.PASS else '✘'} {report.status.upper()}"
        f"[/bold {style}]  {report.check_id}  orders={report.orders}"
        f"  graphs={report.universe_size}"
        + (f"  {report.wall_time:.2f}s" if report.wall_time else "")
    )
    for label, items in (
        ("violation", report.violations),
        ("counterexample", report.counterexamples),
        ("witness", report.witnesses),
    ):
        for code in items[:10]:
            console.print(f"  {label}: {code}")
        if len(items) > 10:
            console.print(f"  … {len(items) - 10} more")
    for failure in report.failures:
        console.print(f"  [red]{failure}[/red]")
    for n, rec in sorted(report.extremal.items(), key=lambda kv: int(kv[0])):
        console.print(f"  n={n}: {rec.mode} size {rec.size}, {rec.count} class(es)")


def _run_and_report(
    spec: verify.CheckSpec, jobs: int, shard: Optional[str], out: Optional[Path]
) -> None:
    with _usage_errors():
        report = runner.run_verification(spec, jobs=jobs, shard=_shard(shard))
    if out is not None:
        reports.write_report(report, out)
    else:
        sys.stdout.write(reports.to_json(report))
    _print_summary(report)
    raise typer.Exit(code=verify.exit_code(report))


@app.command("verify")
def cmd_verify(
    check: Optional[str] = typer.Argument(None, help="Check id, e.g. T5 (see --list)."),
    n: List[int] = typer.Option([], "--n", help="Order(s); defaults to the feasibility table."),
    shard: Optional[str] = typer.Option(None, "--shard", help="Only shard i/k."),
    jobs: int = typer.Option(DEFAULT_JOBS, "--jobs", help="Worker processes."),
    budget_graphs: Optional[int] = typer.Option(DEFAULT_BUDGET_GRAPHS, "--budget-graphs", help="Stop after this many graphs."),
    budget_seconds: Optional[float] = typer.Option(DEFAULT_BUDGET_SECONDS, "--budget-seconds", help="Stop after this many seconds."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
    list_: bool = typer.Option(False, "--list", help="List the checks and exit."),
):
    """Run an exhaustive check; exit 0 pass, 1 violation, 2 incomplete, 4 counterexample."""
    if list_:
        _print_checks()
        return
    with _usage_errors():
        if check is None:
            raise click.UsageError("a check id is required (see --list)")
        spec = verify.make_spec(
            check, n, budget_graphs=budget_graphs, budget_seconds=budget_seconds, cap=cap
        )
    _run_and_report(spec, jobs, shard, out)


# ─────────────────────────── pancycle search ──────────────────────────────


@app.command("search")
def cmd_search(
    check: str = typer.Argument(..., help="C2_search, P1_probe or P3_search."),
    n: List[int] = typer.Option([], "--n", help="Order(s)."),
    s: Optional[int] = typer.Option(None, "--s", help="P1_probe: s."),
    t: Optional[int] = typer.Option(None, "--t", help="P1_probe: t."),
    connectivity: str = typer.Option("any", "--connectivity", help="P1_probe: any, connected or two_connected."),
    certificate: Optional[str] = typer.Option(None, "--certificate", help="P3_search: check this graph6 graph."),
    shard: Optional[str] = typer.Option(None, "--shard", help="Only shard i/k."),
    jobs: int = typer.Option(DEFAULT_JOBS, "--jobs", help="Worker processes."),
    budget_graphs: Optional[int] = typer.Option(DEFAULT_BUDGET_GRAPHS, "--budget-graphs", help="Stop after this many graphs."),
    budget_seconds: Optional[float] = typer.Option(DEFAULT_BUDGET_SECONDS, "--budget-seconds", help="Stop after this many seconds."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here."),
    cap: int = typer.Option(DEFAULT_ORDER_CAP, "--cap", help="Largest accepted order."),
):
    """Search for conjecture counterexamples or explore an open problem."""
    with _usage_errors():
        if check not in SEARCH_CHECKS:
            raise click.UsageError(f"search runs {', '.join(SEARCH_CHECKS)}, not {check!r}")
        params: dict[str, Any] = {}
        if check == "P1_probe":
            params = {"s": s, "t": t, "connectivity": connectivity}
        elif check == "P3_search" and certificate:
            params = {"certificate": certificate}
        spec = verify.make_spec(
            check, n, budget_graphs=budget_graphs, budget_seconds=budget_seconds, params=params, cap=cap
        )
    _run_and_report(spec, jobs, shard, out)


# ─────────────────────────── pancycle report … ────────────────────────────

report_app = typer.Typer(
    name="report",
    help="Stored report commands.",
    no_args_is_help=True,
)
app.add_typer(report_app, name="report", help="Stored report commands.")


@report_app.command("check")
def cmd_report_check(path: Path = typer.Argument(..., help="Report JSON file.")):
    """Recompute a stored report's digest."""
    with _usage_errors():
        try:
            report = reports.read_report(path)
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise click.UsageError(f"cannot read report {path}: {exc}") from exc
    result = reports.check_report_digest(report)
    if result.ok:
        console.print(f"[bold green]✔ VERIFIED[/bold green]  {report.check_id}  {result.stored[:16]}…")
    else:
        console.print(f"[bold red]✘ FAILED[/bold red]  {report.check_id}")
        console.print(f"  stored {result.stored[:16]}…, recomputed {result.recomputed[:16]}…")
        raise typer.Exit(code=EXIT_VIOLATION)


@report_app.command("merge")
def cmd_report_merge(
    paths: List[Path] = typer.Argument(..., help="Shard report files."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the merged report here."),
):
    """Merge shard reports of one check into a single finalised report."""
    with _usage_errors():
        try:
            parts = [reports.read_report(p) for p in paths]
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise click.UsageError(f"cannot read report: {exc}") from exc
        merged = verify.merge_reports(parts)
    if out is not None:
        reports.write_report(merged, out)
    else:
        sys.stdout.write(reports.to_json(merged))
    _print_summary(merged)
    raise typer.Exit(code=verify.exit_code(merged))


@app.command("predicates")
def cmd_predicates():
    """List the predicate forms accepted by --prune and --filter."""
    for form in get_predicate_forms():
        console.print(f"  • {form}")


# ─────────────────────────── entry-point ──────────────────────────────────


def app_entry():
    """Console script; every usage error exits 3."""
    try:
        code = app(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    app_entry()
