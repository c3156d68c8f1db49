import json

import numpy as np
import pytest

from qradius.verify import (SUITES, PropertySpec, SuiteConfig, coverage_manifest, load_claims,
                            replay_trial, run_suite, suite_properties)
from qradius.verify.report import run_properties
from qradius.verify.suites import _cell_report, jordan_block

SMALL = SuiteConfig(seed=42, trials=2)


@pytest.fixture(scope="module")
def small_reports():
    return {s: run_suite(s, SMALL, workers=1) for s in SUITES}


@pytest.mark.parametrize("suite", SUITES)
def test_small_suites_pass(small_reports, suite):
    rep = small_reports[suite]
    assert rep.passed, [(r.name, r.worst_slack) for r in rep.records if not r.passed]
    for r in rep.records:
        assert r.worst_case["seed"] == 42
        assert 0 <= r.worst_case["index"] < r.trials


def test_reports_are_deterministic(small_reports):
    again = run_suite("axioms", SMALL, workers=1)
    assert again.to_json() == small_reports["axioms"].to_json()


def test_records_sorted(small_reports):
    names = [r["name"] for r in small_reports["sandwich"].to_obj()["records"]]
    assert names == sorted(names)


def test_replay_reproduces_worst_case(small_reports):
    rec = small_reports["blocks"].record("blocks/offdiagonal-phase")
    slack, inputs = replay_trial(rec.name, rec.worst_case["index"], SMALL)
    assert slack == rec.worst_case["slack"]
    assert inputs == rec.worst_case["inputs"]


def test_replay_sandwich_cell(small_reports):
    rec = small_reports["sandwich"].record("sandwich/circulant/n=3")
    _cell_report.cache_clear()
    slack, inputs = replay_trial(rec.name, rec.worst_case["index"], SMALL)
    assert slack == rec.worst_case["slack"]
    with pytest.raises(KeyError):
        replay_trial("no/such/property", 0, SMALL)
    with pytest.raises(IndexError):
        replay_trial(rec.name, 10**6, SMALL)


def always_fails(cfg, rng, index):
    x = float(rng.standard_normal())
    return -1.0 - index, {"x": x}


def test_failure_records_are_replayable():
    spec = PropertySpec("demo/failing", ("demo",), 0.0, 3, always_fails)
    rep = run_properties("demo", [spec], SMALL, workers=1)
    assert not rep.passed and rep.failures == 3
    rec = rep.records[0]
    assert rec.worst_case["index"] == 2 and rec.worst_slack == -3.0
    case = rec.failing_cases[1]
    from qradius.verify.report import _run_one
    assert _run_one(always_fails, SMALL, spec.name, case["index"]) == (case["slack"], case["inputs"])


def test_parallel_matches_serial():
    cfg = SuiteConfig(seed=3, trials=1)
    serial = run_suite("reduction", cfg, workers=1).to_json()
    parallel = run_suite("reduction", cfg, workers=2).to_json()
    assert serial == parallel


def test_coverage_manifest_matches_claims():
    manifest = coverage_manifest()
    claims = load_claims()
    assert set(manifest) == set(claims)
    assert all(manifest[c] for c in claims)


def test_corollaries_are_two_block_cells():
    manifest = coverage_manifest()
    for fam in ("circulant", "skew-circulant", "imaginary-circulant", "imaginary-skew-circulant"):
        assert all(name.endswith("n=2") for name in manifest[f"{fam}-pair"])


def test_default_trial_counts():
    cfg = SuiteConfig()
    axioms = {p.name: p.trials for p in suite_properties("axioms", cfg)}
    assert all(t == 200 for t in axioms.values())
    sandwich = [p for p in suite_properties("sandwich", cfg) if p.name.startswith("sandwich/")]
    assert len(sandwich) == 8 * 4
    assert sum(p.trials for p in sandwich) == 8 * 4 * 2 * 4 * 50


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(q_grid=(0.0, 0.5))
    with pytest.raises(ValueError):
        run_suite("nope", SMALL)


def test_report_json_roundtrip(small_reports):
    obj = json.loads(small_reports["classical"].to_json())
    assert obj["suite"] == "classical" and obj["passed"] is True
    assert list(obj) == ["suite", "passed", "failures", "config", "records"]


def test_jordan_block():
    assert np.array_equal(jordan_block(3), [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
