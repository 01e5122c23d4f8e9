"""Tests for the pancycle command line."""

import json
import logging
import sys
from unittest.mock import patch

import pytest
from typer.testing import CliRunner

from pancycle import cli, families
from pancycle import graph as G
from pancycle import reports as R

cli_runner = CliRunner()


@pytest.fixture(autouse=True)
def _restore_logging():
    """The root callback replaces the root handlers; put them back."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def _invoke(*args):
    return cli_runner.invoke(cli.app, [str(a) for a in args])


def _json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestAnalyze:
    def test_bt(self, tmp_path):
        out = tmp_path / "bt.json"
        result = _invoke("analyze", "BT:7", "--out", out)
        assert result.exit_code == 0
        rec = _json(out)
        assert (rec["order"], rec["size"]) == (7, 11)
        assert rec["bipartite"] is False
        assert rec["cycles"]["pancyclic"] is True
        assert rec["cycles"]["has_pancyclic_edge"] is False
        assert rec["cycles"]["hamiltonian"] is True
        assert rec["st"] == {"s": 4, "t": 2, "holds": False, "witness": rec["st"]["witness"]}

    def test_barbell(self, tmp_path):
        out = tmp_path / "b.json"
        assert _invoke("analyze", "barbell:8", "--out", out).exit_code == 0
        rec = _json(out)
        assert rec["size"] == 13
        assert rec["connectivity"]["is_connected"] is True
        assert rec["connectivity"]["is_2_connected"] is False
        assert rec["is_4_2"] is True
        assert rec["alpha"] == 2

    def test_graph6_argument_with_spectra(self, tmp_path):
        out = tmp_path / "k4.json"
        code = G.to_graph6(families.complete(4))
        assert _invoke("analyze", code, "--spectra", "--out", out).exit_code == 0
        rec = _json(out)
        assert rec["graph6"] == code
        assert rec["edge_spectra"]["0-1"] == [3, 4]
        assert len(rec["cycles"]["pancyclic_edges"]) == 6

    def test_tiny_graph_has_no_cycle_block(self, tmp_path):
        out = tmp_path / "k2.json"
        assert _invoke("analyze", "K2", "--out", out).exit_code == 0
        assert _json(out)["cycles"] is None

    def test_malformed_graph6(self):
        assert _invoke("analyze", "A").exit_code == 3


class TestConstruct:
    def test_builds(self, tmp_path):
        out = tmp_path / "g3.json"
        assert _invoke("construct", "G3:10", "--out", out).exit_code == 0
        rec = _json(out)
        assert G.from_graph6(rec["graph6"]) == families.g3(10)
        assert rec["mismatches"] == []

    def test_bad_parameters(self):
        assert _invoke("construct", "BT:8").exit_code == 3

    def test_mismatch_exits_1(self, tmp_path):
        with patch.object(families, "expected_properties", return_value={"size": 1}):
            result = _invoke("construct", "C5", "--out", tmp_path / "c5.json")
        assert result.exit_code == 1
        assert _json(tmp_path / "c5.json")["mismatches"]


class TestSpectrum:
    def test_edge(self, tmp_path):
        out = tmp_path / "s.json"
        assert _invoke("spectrum", "C5", "--edge", "0-1", "--out", out).exit_code == 0
        assert _json(out) == {"subject": "edge", "order": 5, "lengths": [5], "full": False}

    def test_vertex_and_graph(self, tmp_path):
        assert _invoke("spectrum", "K5", "--vertex", "2", "--out", tmp_path / "v.json").exit_code == 0
        assert _json(tmp_path / "v.json")["full"] is True
        assert _invoke("spectrum", "petersen", "--out", tmp_path / "g.json").exit_code == 0
        assert _json(tmp_path / "g.json")["lengths"] == [5, 6, 8, 9]

    @pytest.mark.parametrize(
        "args",
        [
            ["--edge", "0-2"],
            ["--edge", "zero-one"],
            ["--vertex", "9"],
            ["--edge", "0-1", "--vertex", "0"],
        ],
    )
    def test_usage_errors(self, args):
        assert _invoke("spectrum", "C5", *args).exit_code == 3


class TestEnumerate:
    def test_generates(self, tmp_path):
        out = tmp_path / "g5.g6"
        assert _invoke("enumerate", "--n", 5, "--out", out).exit_code == 0
        lines = out.read_text(encoding="ascii").splitlines()
        assert len(lines) == 34
        assert lines == sorted(lines)

    def test_prune_and_filter(self, tmp_path):
        out = tmp_path / "g.g6"
        args = ["enumerate", "--n", 6, "--prune", "st_closed:4:2", "--filter", "two_connected"]
        assert _invoke(*args, "--out", out).exit_code == 0
        for line in out.read_text(encoding="ascii").splitlines():
            g = G.from_graph6(line)
            assert g.n == 6

    def test_sharded_runs_cover_the_whole(self, tmp_path):
        whole, a, b = tmp_path / "w", tmp_path / "a", tmp_path / "b"
        assert _invoke("enumerate", "--n", 6, "--out", whole).exit_code == 0
        assert _invoke("enumerate", "--n", 6, "--shard", "0/2", "--out", a).exit_code == 0
        assert _invoke("enumerate", "--n", 6, "--shard", "1/2", "--out", b).exit_code == 0
        parts = a.read_text().splitlines() + b.read_text().splitlines()
        assert sorted(parts) == whole.read_text().splitlines()

    def test_ingest(self, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(
            "\n".join(G.to_graph6(g) for g in (families.cycle(5), G.empty(4), families.cycle(5))),
            encoding="ascii",
        )
        out = tmp_path / "out.g6"
        assert _invoke("enumerate", "--ingest", src, "--prune", "st_closed:4:2", "--out", out).exit_code == 0
        assert len(out.read_text().splitlines()) == 2

    @pytest.mark.parametrize(
        "args",
        [
            ["--n", 5, "--prune", "connected"],
            ["--n", 5, "--prune", "planar"],
            ["--n", 13],
            ["--n", 5, "--shard", "2/2"],
            ["--prune", "triangle_free"],
            ["--ingest", "/nonexistent/file.g6"],
        ],
    )
    def test_usage_errors(self, args):
        assert _invoke("enumerate", *args).exit_code == 3


class TestVerify:
    def test_list(self):
        assert _invoke("verify", "--list").exit_code == 0

    def test_pass_and_report_check(self, tmp_path):
        out = tmp_path / "t9.json"
        assert _invoke("verify", "T9", "--n", 7, "--out", out).exit_code == 0
        rec = _json(out)
        assert rec["status"] == "pass"
        assert rec["universe_size"] > 0
        assert _invoke("report", "check", out).exit_code == 0

        rec["extremal"]["7"]["size"] = 8
        out.write_text(json.dumps(rec), encoding="utf-8")
        assert _invoke("report", "check", out).exit_code == 1

    def test_reruns_write_identical_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert _invoke("verify", "T9", "--n", 7, "--out", a).exit_code == 0
        assert _invoke("verify", "T9", "--n", 7, "--out", b).exit_code == 0
        assert a.read_bytes() == b.read_bytes()
        assert "wall_time" not in _json(a)

    def test_budget_exit_2(self, tmp_path):
        out = tmp_path / "r.json"
        assert _invoke("verify", "T9", "--n", 7, "--budget-graphs", 1, "--out", out).exit_code == 2
        assert _json(out)["incomplete"] is True

    def test_shards_merge_to_the_whole(self, tmp_path):
        a, b, m, w = (tmp_path / x for x in ("a.json", "b.json", "m.json", "w.json"))
        assert _invoke("verify", "T9", "--n", 7, "--shard", "0/2", "--out", a).exit_code == 2
        assert _invoke("verify", "T9", "--n", 7, "--shard", "1/2", "--out", b).exit_code == 2
        assert _invoke("report", "merge", a, b, "--out", m).exit_code == 0
        assert _invoke("verify", "T9", "--n", 7, "--out", w).exit_code == 0
        assert _json(m)["digest"] == _json(w)["digest"]

    def test_merge_rejects_mixed_checks(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        _invoke("verify", "R1", "--n", 7, "--out", a)
        _invoke("verify", "T9", "--n", 7, "--out", b)
        assert _invoke("report", "merge", a, b).exit_code == 3

    @pytest.mark.parametrize(
        "args",
        [
            ["XX"],
            ["T11", "--n", 7],
            [],
            ["T9", "--n", 7, "--shard", "5/2"],
            ["T9", "--n", 7, "--cap", 6],
            ["T9", "--n", 7, "--cap", 65],
        ],
    )
    def test_usage_errors(self, args):
        assert _invoke("verify", *args).exit_code == 3

    @pytest.mark.parametrize("path", ["/nonexistent/report.json", None])
    def test_unreadable_report(self, tmp_path, path):
        if path is None:
            path = tmp_path / "junk.json"
            path.write_text("{not json", encoding="utf-8")
        assert _invoke("report", "check", path).exit_code == 3


class TestSearch:
    def test_edge_search(self, tmp_path):
        out = tmp_path / "c2.json"
        assert _invoke("search", "C2_search", "--n", 7, "--out", out).exit_code == 0
        assert _json(out)["witnesses"]

    def test_open_problem_search(self, tmp_path):
        out = tmp_path / "p1.json"
        args = ["search", "P1_probe", "--n", 7, "--s", 4, "--t", 2, "--connectivity", "any"]
        assert _invoke(*args, "--out", out).exit_code == 0
        rec = _json(out)
        assert rec["params"] == {"s": 4, "t": 2, "connectivity": "any"}
        assert rec["extremal"]["7"]["size"] == 9

    def test_failing_certificate(self, tmp_path):
        code = G.to_graph6(families.complete(5))
        out = tmp_path / "p3.json"
        assert _invoke("search", "P3_search", "--certificate", code, "--out", out).exit_code == 1
        assert _json(out)["status"] == "violation"

    def test_cap_bounds_the_certificate(self, tmp_path):
        code = G.to_graph6(families.complete(5))
        out = tmp_path / "p3.json"
        assert _invoke("search", "P3_search", "--certificate", code, "--cap", 4).exit_code == 3
        args = ["search", "P3_search", "--certificate", code, "--cap", 5, "--out", out]
        assert _invoke(*args).exit_code == 1

    @pytest.mark.parametrize("args", [["T5"], ["P1_probe", "--n", 7], ["C2_search", "--n", 7, "--cap", 6]])
    def test_usage_errors(self, args):
        assert _invoke("search", *args).exit_code == 3


class TestEntry:
    def test_predicates(self):
        assert _invoke("predicates").exit_code == 0

    @pytest.mark.parametrize(
        "argv, code",
        [
            (["verify", "--bogus"], 3),
            (["report", "check"], 3),
            (["verify", "R1", "--n", "7"], 0),
            (["verify", "T9", "--n", "7", "--budget-graphs", "1"], 2),
        ],
    )
    def test_exit_codes(self, monkeypatch, capsys, argv, code):
        monkeypatch.setattr(sys, "argv", ["pancycle", *argv])
        with pytest.raises(SystemExit) as info:
            cli.app_entry()
        assert info.value.code == code

    def test_report_round_trip_through_cli(self, tmp_path):
        out = tmp_path / "r1.json"
        _invoke("verify", "R1", "--n", 8, "--out", out)
        report = R.read_report(out)
        assert R.check_report_digest(report).ok
        assert report.universe == {"8": 1}
