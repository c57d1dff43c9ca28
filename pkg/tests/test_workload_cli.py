"""Workload parsing, generators, replay, bench, and the CLI surface."""

import csv
import io
import subprocess
import sys

import pytest

from dynorient import OrientationConfig, WorkloadError
from dynorient.harness import bench, replay
from dynorient.oracles import exact_arboricity, exact_density
from dynorient.workload import generate, parse_workload

from conftest import clique_edges


def _k4_workload():
    lines = ["n 8"] + [f"+ {u} {v}" for u, v in clique_edges(4)]
    return lines


class TestParsing:
    def test_missing_header(self):
        with pytest.raises(WorkloadError) as err:
            parse_workload(["+ 0 1"])
        assert "line 1" in str(err.value)

    def test_bad_vertex_and_self_loop(self):
        with pytest.raises(WorkloadError) as err:
            parse_workload(["n 4", "+ 0 9"])
        assert "line 2" in str(err.value)
        with pytest.raises(WorkloadError):
            parse_workload(["n 4", "+ 2 2"])

    def test_unknown_ops(self):
        with pytest.raises(WorkloadError):
            parse_workload(["n 4", "* 0 1"])
        with pytest.raises(WorkloadError):
            parse_workload(["n 4", "? nonsense"])
        with pytest.raises(WorkloadError):
            parse_workload(["n 4", "! nonsense"])

    def test_comments_and_queries(self):
        n, ops = parse_workload([
            "n 6", "# comment", "", "+ 0 1", "? density", "? color 3",
            "! audit", "- 0 1",
        ])
        assert n == 6
        assert [op.kind for op in ops] == ["+", "density", "color", "audit",
                                           "-"]
        assert ops[2].u == 3


class TestGenerators:
    def test_same_seed_byte_identical(self):
        a = generate("random", 50, 1000, seed=7)
        b = generate("random", 50, 1000, seed=7)
        assert a == b
        assert a != generate("random", 50, 1000, seed=8)

    def test_all_kinds_parse_and_replay(self):
        for kind in ("random", "drifting-density", "clique-plus-path",
                     "star-churn"):
            lines = generate(kind, 24, 150, seed=3, audit_every=40)
            n, ops = parse_workload(lines)
            cfg = OrientationConfig.fast_additive(n)
            result = replay(n, ops, cfg, oracle_limit=24)
            assert result.audits > 0

    def test_star_churn_keeps_arboricity_one(self):
        lines = generate("star-churn", 16, 200, seed=5)
        n, ops = parse_workload(lines)
        live = set()
        for i, op in enumerate(ops):
            if op.kind == "+":
                live.add((op.u, op.v))
            elif op.kind == "-":
                live.discard((op.u, op.v))
            if i % 50 == 0 and live:
                assert exact_arboricity(
                    max(max(e) for e in live) + 1, sorted(live)) == 1

    def test_drifting_density_rises_and_falls(self):
        lines = generate("drifting-density", 40, 400, seed=9, clique=8)
        n, ops = parse_workload(lines)
        live = set()
        trace = []
        for i, op in enumerate(ops):
            if op.kind == "+":
                live.add((op.u, op.v))
            elif op.kind == "-":
                live.discard((op.u, op.v))
            if i % 40 == 0:
                rho, _ = exact_density(n, sorted(live))
                trace.append(rho)
        peak = max(trace)
        assert peak > trace[0] and peak > trace[-1]


class TestReplay:
    def test_k4_density_estimate_with_audits(self):
        lines = _k4_workload() + ["! audit", "? density"]
        n, ops = parse_workload(lines)
        cfg = OrientationConfig.eps_density(n, 0.5)
        out = io.StringIO()
        result = replay(n, ops, cfg, csv_out=out, query_out=io.StringIO())
        assert result.audits == 1
        # exact fraction answer within [3/2, 9/4]
        from fractions import Fraction
        frac = Fraction(result.query_lines[0].split()[1])
        assert Fraction(3, 2) <= frac <= Fraction(9, 4)
        rows = list(csv.reader(io.StringIO(out.getvalue())))
        assert rows[0][:3] == ["op_index", "op_kind", "copy_flips"]
        assert len(rows) == 1 + len(ops)

    def test_deleting_absent_edge_names_the_line(self):
        lines = ["n 4", "+ 0 1", "- 2 3"]
        n, ops = parse_workload(lines)
        cfg = OrientationConfig.simple_additive(n)
        with pytest.raises(WorkloadError) as err:
            replay(n, ops, cfg)
        assert "line 3" in str(err.value)

    def test_density_query_needs_eps_preset(self):
        lines = ["n 4", "+ 0 1", "? density"]
        n, ops = parse_workload(lines)
        with pytest.raises(WorkloadError) as err:
            replay(n, ops, OrientationConfig.simple_additive(n))
        assert "line 3" in str(err.value)

    def test_app_queries_answered(self):
        lines = ["n 6", "+ 0 1", "+ 2 3", "? matching", "? color 0",
                 "? matvec 0"]
        n, ops = parse_workload(lines)
        result = replay(n, ops, OrientationConfig.fast_additive(n))
        assert result.query_lines[0] == "matching 0-1 2-3"
        assert result.query_lines[1].startswith("color 0 = ")
        assert result.query_lines[2].startswith("matvec 0 = ")


def test_bench_runs_presets_on_one_workload():
    lines = generate("random", 20, 120, seed=13)
    n, ops = parse_workload(lines)
    out = io.StringIO()
    runs = bench(n, ops, ["simple-additive", "fast-additive"], csv_out=out)
    assert set(runs) == {"simple-additive", "fast-additive"}
    header = out.getvalue().splitlines()[0].split(",")
    assert "copy_flips_simple-additive" in header
    assert "max_outdeg_fast-additive" in header


def test_cli_end_to_end(tmp_path):
    wl = tmp_path / "w.txt"
    csv_path = tmp_path / "m.csv"
    run = lambda *args: subprocess.run(
        [sys.executable, "-m", "dynorient.cli", *args],
        capture_output=True, text=True)
    r = run("generate", "--kind", "random", "--n", "16", "--steps", "80",
            "--seed", "4", "--audit-every", "20", "--out", str(wl))
    assert r.returncode == 0, r.stderr
    r = run("replay", str(wl), "--preset", "eps-density", "--epsilon", "0.5",
            "--out", str(csv_path))
    assert r.returncode == 0, r.stderr
    assert "audits clean" in r.stdout
    assert csv_path.read_text().startswith("op_index,")
    r = run("oracle", "density", str(wl))
    assert r.returncode == 0 and r.stdout.startswith("density ")
    r = run("oracle", "arboricity", str(wl))
    assert r.returncode == 0 and r.stdout.startswith("arboricity ")
    # errors surface with the line number and a nonzero exit
    bad = tmp_path / "bad.txt"
    bad.write_text("n 4\n- 0 1\n")
    r = run("replay", str(bad))
    assert r.returncode == 2 and "line 2" in r.stderr


def test_replay_determinism_with_event_log(tmp_path):
    lines = generate("drifting-density", 32, 300, seed=21, clique=6)
    wl = tmp_path / "w.txt"
    wl.write_text("\n".join(lines) + "\n")
    outs = []
    for tag in ("a", "b"):
        csv_path = tmp_path / f"{tag}.csv"
        log_path = tmp_path / f"{tag}.log"
        r = subprocess.run(
            [sys.executable, "-m", "dynorient.cli", "replay", str(wl),
             "--preset", "fast-multiplicative", "--out", str(csv_path),
             "--event-log", str(log_path)],
            capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
        rows = [row.rsplit(",", 1)[0]  # strip the wall_nanos column
                for row in csv_path.read_text().splitlines()]
        outs.append((rows, log_path.read_text()))
    assert outs[0] == outs[1]
