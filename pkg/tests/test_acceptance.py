"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line and then
asserts. The two full ``verify --suite all --seed 42`` runs are shared by
the criteria that read suite records.
"""
import csv
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from qradius.cli import main
from qradius.linalg import random_matrix
from qradius.qcore import estimate_radius, exact_2x2, trace_boundary
from qradius.verify import SuiteConfig, run_reduction_suite, run_sandwich_suite

pytestmark = pytest.mark.slow

Q_GRID = [k / 10 for k in range(1, 11)]
EX0 = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=complex)
EX1 = np.array([[0.1, 1 / 24], [1 / 24, 0.1]])
ONES = np.ones((2, 2))
C0 = 2 + math.sqrt(2)


@pytest.fixture
def say(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


@pytest.fixture(scope="session")
def verify_runs(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify")
    blobs, times = [], []
    for k in range(2):
        path = out / f"report{k}.json"
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "qradius.cli", "verify", "--suite", "all",
                               "--seed", "42", "--report", str(path)], capture_output=True, text=True)
        times.append(time.perf_counter() - t0)
        assert proc.returncode in (0, 1), proc.stderr
        blobs.append(path.read_bytes())
    return blobs, times


def suite_records(blob, suite):
    obj = json.loads(blob)
    rep = next(s for s in obj["suites"] if s["suite"] == suite)
    return {r["name"]: r for r in rep["records"]}


def test_criterion_01_symmetric_pair_closed_form(say):
    t0 = time.perf_counter()
    est_err = max(abs(estimate_radius(EX1, q).value - (1 / 24 + q / 10)) for q in Q_GRID)
    exact_err = max(abs(exact_2x2(EX1, q)[1] - (1 / 24 + q / 10)) for q in Q_GRID)
    elapsed = time.perf_counter() - t0
    ok = est_err <= 1e-6 and exact_err <= 1e-10 and elapsed < 5
    say(1, ok, f"estimate err {est_err:.2e}, closed-form err {exact_err:.2e}, {elapsed:.2f}s")
    assert ok


def test_criterion_02_all_ones_chain(say, tmp_path):
    est_err = max(abs(estimate_radius(ONES, q).value - (1 + q)) for q in Q_GRID)
    prefix = str(tmp_path / "ex2")
    rc = main(["reproduce", "--example", "ex2", "--q-grid", "0.1:1:0.1", "--out", prefix, "--thetas", "64"])
    with open(prefix + "_bounds.csv") as fh:
        rows = [[float(v) for v in r] for r in list(csv.reader(fh))[1:]]
    chain = all(lo <= wq <= up for _, lo, wq, up in rows)
    forms = max(max(abs(lo - 2 * q), abs(wq - (1 + q)), abs(up - 2 * (q + 2 * math.sqrt(1 - q * q))))
                for q, lo, wq, up in rows)
    ok = rc == 0 and est_err <= 1e-6 and chain and forms <= 1e-12 and len(rows) == 10
    say(2, ok, f"estimate err {est_err:.2e}, CSV chain exact: {chain}, closed-form err {forms:.2e}")
    assert ok


def test_criterion_03_tridiagonal_sandwich(say):
    t0 = time.perf_counter()
    worst = math.inf
    for q in Q_GRID:
        w = estimate_radius(EX0, q).value
        p = math.sqrt(max(0.0, 1 - q * q))
        worst = min(worst, w - (C0 * q - 1e-5), C0 * (q + 2 * p) + 1e-5 - w)
    at_one = abs(estimate_radius(EX0, 1.0).value - C0)
    elapsed = time.perf_counter() - t0
    ok = worst >= 0 and at_one <= 1e-6 and elapsed < 10
    say(3, ok, f"min slack {worst:.2e}, |w_1 - (2+sqrt2)| {at_one:.2e}, {elapsed:.2f}s")
    assert ok


def test_criterion_04_sandwich_grid(say):
    t0 = time.perf_counter()
    rep = run_sandwich_suite(SuiteConfig(seed=7))
    elapsed = time.perf_counter() - t0
    grid = [r for r in rep.records if r.name.startswith("sandwich/")]
    collapse = [r for r in rep.records if r.name.startswith("collapse/")]
    cells = sum(r.trials for r in grid)
    fails = sum(r.failures for r in grid)
    c_fails = sum(r.failures for r in collapse)
    ok = cells == 8 * 4 * 2 * 4 * 50 and fails == 0 and c_fails == 0 and rep.passed and elapsed < 600
    say(4, ok, f"{cells} cells, {fails} sandwich failures, {c_fails} q=1 equality failures, "
               f"all records pass: {rep.passed}, {elapsed:.0f}s")
    assert ok


def test_criterion_05_reduction_exactness(say):
    t0 = time.perf_counter()
    rep = run_reduction_suite(SuiteConfig(seed=42))
    elapsed = time.perf_counter() - t0
    defect = max(c["inputs"]["defect"] for r in rep.records for c in [r.worst_case])
    residual = max(c["inputs"]["residual"] for r in rep.records for c in [r.worst_case])
    ok = rep.passed and elapsed < 60
    say(5, ok, f"{sum(r.trials for r in rep.records)} cases, worst trial defect {defect:.1e}, "
               f"residual {residual:.1e}, {elapsed:.1f}s")
    assert ok


def test_criterion_06_axioms_and_block_lemmas(say, verify_runs):
    blob = verify_runs[0][0]
    recs = list(suite_records(blob, "axioms").values()) + list(suite_records(blob, "blocks").values())
    lemma = [r for r in recs if r["name"] != "axioms/oracle-consistency"]
    ok = all(r["failures"] == 0 and r["trials"] >= 200 and r["tol"] == 1e-6 for r in lemma)
    worst = min(r["worst_slack"] for r in lemma)
    say(6, ok, f"{len(lemma)} properties x 200 trials, min slack left {worst:.2e} of 1e-6")
    assert ok


def test_criterion_07_classical_limit(say, verify_runs):
    recs = suite_records(verify_runs[0][0], "classical")
    norm, power, jordan = (recs["classical/norm-equivalence"], recs["classical/power-inequality"],
                           recs["classical/nilpotent-bound"])
    ok = (norm["failures"] == 0 and norm["trials"] >= 200 and power["failures"] == 0
          and jordan["failures"] == 0 and jordan["trials"] == 5
          and all(r["failures"] == 0 for r in recs.values()))
    say(7, ok, f"norm equivalence {norm['trials']} trials, power inequality {power['trials']} trials, "
               f"Jordan n=2..6 min slack {jordan['worst_slack']:.2e}")
    assert ok


def test_criterion_08_oracle_agreement(say, verify_runs):
    recs = suite_records(verify_runs[0][0], "axioms")
    agree, oracle = recs["axioms/two-by-two-agreement"], recs["axioms/oracle-consistency"]
    ok = (agree["failures"] == 0 and agree["trials"] >= 200 and len(agree["worst_case"]["inputs"]["q"]) == 6
          and oracle["failures"] == 0)
    say(8, ok, f"2x2 agreement worst err {1e-6 - agree['worst_slack']:.2e}, "
               f"oracle never above estimate: {oracle['failures'] == 0}")
    assert ok


def test_criterion_09_boundary_validity(say):
    rng = np.random.default_rng(9)
    cases = [(EX1, 0.5), (EX0, 0.5), (np.eye(2), 0.5), (np.array([[0, 1], [0, 0]]), 0.6)]
    cases += [(random_matrix(rng, n), q) for n in (2, 3, 4) for q in (0.2, 0.5, 0.8, 1.0)]
    violation = max(trace_boundary(a, q, 360).support_violation() for a, q in cases)
    tr = trace_boundary(np.array([[0, 1], [0, 0]]), 0.6, 1024)
    # Hausdorff distance between the polygon (vertices and edges) and the circle
    edges = tr.points[:, None] + np.linspace(0, 1, 17)[None, :] * (np.roll(tr.points, -1) - tr.points)[:, None]
    haus = float(np.max(np.abs(np.abs(edges) - 0.9)))
    ok = violation <= 1e-7 and haus <= 1e-5
    say(9, ok, f"max support violation {violation:.1e} over {len(cases)} traces, "
               f"circle Hausdorff {haus:.2e} at 1024 angles")
    assert ok


def test_criterion_10_determinism(say, verify_runs):
    (a, b), times = verify_runs
    same = a == b
    passed = json.loads(a)["passed"]
    say(10, same, f"byte-identical reports: {same} ({len(a)} bytes), suite verdict "
                  f"{'pass' if passed else 'fail'}, runs {times[0]:.0f}s / {times[1]:.0f}s")
    assert same and passed
