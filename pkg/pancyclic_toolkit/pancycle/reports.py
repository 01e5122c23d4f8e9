"""Verification reports — canonical JSON with a SHA-256 digest.

A report is built by a worker for one shard, combined with its siblings by
``combine`` (associative, commutative) and finalised by the check that
produced it.  ``wall_time`` and ``shards`` are provenance and stay out of the
digest, so a merged sharded run and an unsharded run share one digest.
``wall_time`` is never serialised, so a rerun writes the same bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .errors import MergeError

PASS = "pass"
VIOLATION = "violation"
INCOMPLETE = "incomplete"
COUNTEREXAMPLE = "counterexample"
RAW = "raw"

_PROVENANCE = ("wall_time", "shards", "digest")


@dataclass
class Extremal:
    """Extremal size over a universe and the canonical keys (hex) attaining it."""

    mode: str  # "min" or "max"
    size: int
    keys: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.keys)

    def offer(self, size: int, key: str) -> None:
        better = size < self.size if self.mode == "min" else size > self.size
        if better:
            self.size = size
            self.keys = [key]
        elif size == self.size and key not in self.keys:
            self.keys.append(key)
            self.keys.sort()

    def merged(self, other: Extremal) -> Extremal:
        out = Extremal(self.mode, self.size, list(self.keys))
        for key in other.keys:
            out.offer(other.size, key)
        return out


@dataclass
class VerificationReport:
    check_id: str
    params: dict[str, Any]
    orders: list[int]
    universe: dict[str, int] = field(default_factory=dict)  # order → graphs examined
    violations: list[str] = field(default_factory=list)  # canonical graph6
    witnesses: list[str] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    extremal: dict[str, Extremal] = field(default_factory=dict)
    classes: dict[str, dict[str, list[str]]] = field(default_factory=dict)  # order → size → keys
    facts: dict[str, dict[str, int]] = field(default_factory=dict)  # order → name → count
    details: dict[str, dict[str, Any]] = field(default_factory=dict)  # graph6 → notes
    failures: list[str] = field(default_factory=list)
    incomplete: bool = False
    status: str = RAW
    shards: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    digest: str = ""

    # -- accumulation -----------------------------------------------------

    def count(self, n: int, k: int = 1) -> None:
        self.universe[str(n)] = self.universe.get(str(n), 0) + k

    def fact(self, n: int, name: str, k: int = 1) -> None:
        bucket = self.facts.setdefault(str(n), {})
        bucket[name] = bucket.get(name, 0) + k

    def offer_extremal(self, n: int, mode: str, size: int, key: str) -> None:
        rec = self.extremal.get(str(n))
        if rec is None:
            self.extremal[str(n)] = Extremal(mode, size, [key])
        else:
            rec.offer(size, key)

    def add_class(self, n: int, size: int, key: str) -> None:
        bucket = self.classes.setdefault(str(n), {}).setdefault(str(size), [])
        if key not in bucket:
            bucket.append(key)
            bucket.sort()

    @property
    def universe_size(self) -> int:
        return sum(self.universe.values())

    # -- serialisation ----------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        record = asdict(self)
        del record["wall_time"]
        record["universe_size"] = self.universe_size
        for rec in record["extremal"].values():
            rec["count"] = len(rec["keys"])
        return record

    @classmethod
    def from_dict(cls, record: dict[str, Any]) -> VerificationReport:
        fields = {k: v for k, v in record.items() if k not in ("universe_size", "wall_time")}
        fields["extremal"] = {
            n: Extremal(rec["mode"], rec["size"], list(rec["keys"]))
            for n, rec in fields.get("extremal", {}).items()
        }
        return cls(**fields)


def _canonical_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def compute_digest(report: VerificationReport) -> str:
    """SHA-256 over the canonical JSON of *report*, provenance fields excluded."""
    to_hash = {k: v for k, v in report.to_dict().items() if k not in _PROVENANCE}
    return hashlib.sha256(_canonical_json(to_hash).encode("utf-8")).hexdigest()


def seal(report: VerificationReport) -> VerificationReport:
    report.digest = compute_digest(report)
    return report


def to_json(report: VerificationReport) -> str:
    """Stable JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report: VerificationReport, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(report), encoding="utf-8")
    return path


def read_report(path: Path) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(path.read_text(encoding="utf-8")))


@dataclass
class DigestCheck:
    ok: bool
    stored: str
    recomputed: str


def check_report_digest(report: VerificationReport) -> DigestCheck:
    recomputed = compute_digest(report)
    return DigestCheck(report.digest == recomputed, report.digest, recomputed)


# ---------------------------------------------------------------------------
# Combining shard reports
# ---------------------------------------------------------------------------


def _union(a: Iterable[str], b: Iterable[str]) -> list[str]:
    return sorted(set(a) | set(b))


def _combine_pair(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    if a.check_id != b.check_id:
        raise MergeError(f"cannot merge reports of {a.check_id} and {b.check_id}")
    if a.params != b.params or a.orders != b.orders:
        raise MergeError(f"cannot merge {a.check_id} reports with different specs")
    twice = set(a.shards) & set(b.shards)
    if twice:
        raise MergeError(f"shard {sorted(twice)[0]} appears in more than one report")

    out = VerificationReport(a.check_id, dict(a.params), list(a.orders))
    for n in set(a.universe) | set(b.universe):
        out.universe[n] = a.universe.get(n, 0) + b.universe.get(n, 0)
    out.violations = _union(a.violations, b.violations)
    out.witnesses = _union(a.witnesses, b.witnesses)
    out.counterexamples = _union(a.counterexamples, b.counterexamples)
    for n in set(a.extremal) | set(b.extremal):
        if n in a.extremal and n in b.extremal:
            out.extremal[n] = a.extremal[n].merged(b.extremal[n])
        else:
            rec = a.extremal.get(n) or b.extremal[n]
            out.extremal[n] = Extremal(rec.mode, rec.size, list(rec.keys))
    for src in (a.classes, b.classes):
        for n, by_size in src.items():
            for size, keys in by_size.items():
                bucket = out.classes.setdefault(n, {}).setdefault(size, [])
                bucket[:] = _union(bucket, keys)
    for src in (a.facts, b.facts):
        for n, counts in src.items():
            bucket = out.facts.setdefault(n, {})
            for name, k in counts.items():
                bucket[name] = bucket.get(name, 0) + k
    out.details = {**a.details, **b.details}
    out.incomplete = a.incomplete or b.incomplete
    out.shards = sorted(a.shards + b.shards)
    out.wall_time = a.wall_time + b.wall_time
    return out


def combine(reports: list[VerificationReport]) -> VerificationReport:
    """Merge raw shard reports; status and failures are left for finalisation."""
    if not reports:
        raise MergeError("nothing to merge")
    out = reports[0]
    for r in reports[1:]:
        out = _combine_pair(out, r)
    if len(reports) == 1:
        out = _combine_pair(out, VerificationReport(out.check_id, out.params, out.orders))
    return out
