"""Property suites for the q-numerical radius and the structured bounds."""
from __future__ import annotations

import json
import math
import zlib
from functools import lru_cache, partial
from importlib import resources
from typing import Dict, List, Optional

import numpy as np

from ..bounds import (SPECIAL_TAGS, block_radius, direct_sum_bounds, special_case_bounds,
                      theorem_bounds)
from ..linalg import operator_norm, random_matrix, random_unitary, unitarity_defect
from ..qcore import AscentConfig, estimate_radius, exact_2x2, sample_oracle
from ..structured import (CIRCULANT_FAMILIES, FAMILIES, TRIDIAGONAL_FAMILIES,
                          block_diagonalize, make_spec, reducing_unitary)
from .report import PropertySpec, SuiteConfig, SuiteReport, cplx, mat, run_properties

SUITES = ("axioms", "blocks", "sandwich", "classical", "reduction")

AXIOM_TOL = 1e-6
SANDWICH_TOL = 1e-5
AGREEMENT_QS = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
EXAMPLE_QS = tuple(k / 10 for k in range(1, 11))
SPECIAL_SEEDS = 2
REDUCTION_NS = (2, 3, 4, 5, 6)
REDUCTION_DS = (1, 2, 3)


def _w(a, q, cfg: SuiteConfig) -> float:
    return estimate_radius(a, q, cfg.ascent).value


def _dim(cfg: SuiteConfig, index: int) -> int:
    return cfg.dims[index % len(cfg.dims)]


def _q(rng) -> float:
    return float(rng.uniform(0.05, 1.0))


def _slug(family: str) -> str:
    return family.replace("_", "-")


# ---- axioms -----------------------------------------------------------

def _homogeneity(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    a = random_matrix(rng, n)
    lam = 0j if index == 0 else complex(rng.standard_normal(), rng.standard_normal())
    err = abs(_w(lam * a, q, cfg) - abs(lam) * _w(a, q, cfg))
    return AXIOM_TOL - err, {"A": mat(a), "lambda": cplx(lam), "q": q}


def _subadditivity(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    gap = _w(a, q, cfg) + _w(b, q, cfg) - _w(a + b, q, cfg)
    return AXIOM_TOL + gap, {"A": mat(a), "B": mat(b), "q": q}


def _unitary_invariance(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    a = random_matrix(rng, n)
    u = np.eye(n, dtype=complex) if index == 0 else random_unitary(rng, n)
    err = abs(_w(u.conj().T @ a @ u, q, cfg) - _w(a, q, cfg))
    return AXIOM_TOL - err, {"A": mat(a), "U": mat(u), "q": q}


def _phase_invariance(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    a = random_matrix(rng, n)
    lam = complex(np.exp(1j * rng.uniform(0, 2 * math.pi)))
    err = abs(_w(a, lam * q, cfg) - _w(a, q, cfg))
    return AXIOM_TOL - err, {"A": mat(a), "lambda": cplx(lam), "q": q}


def _two_by_two(cfg, rng, index):
    a = random_matrix(rng, 2)
    err = max(abs(_w(a, q, cfg) - exact_2x2(a, q)[1]) for q in AGREEMENT_QS)
    return AXIOM_TOL - err, {"A": mat(a), "q": list(AGREEMENT_QS)}


def _oracle(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    a = random_matrix(rng, n)
    sampled = sample_oracle(a, q, 10_000, seed=int(rng.integers(2**31)))
    return 1e-9 + _w(a, q, cfg) - sampled, {"A": mat(a), "q": q}


def axiom_properties(cfg: SuiteConfig) -> List[PropertySpec]:
    k = cfg.count(200)
    return [
        PropertySpec("axioms/homogeneity", ("qradius-homogeneity",), AXIOM_TOL, k, _homogeneity),
        PropertySpec("axioms/subadditivity", ("qradius-subadditivity",), AXIOM_TOL, k, _subadditivity),
        PropertySpec("axioms/unitary-invariance", ("qradius-unitary-invariance",), AXIOM_TOL, k,
                     _unitary_invariance),
        PropertySpec("axioms/phase-invariance", ("qradius-phase-invariance",), AXIOM_TOL, k,
                     _phase_invariance),
        PropertySpec("axioms/two-by-two-agreement", ("two-by-two-ellipse",), AXIOM_TOL, k, _two_by_two),
        PropertySpec("axioms/oracle-consistency", ("qradius-oracle-consistency",), 1e-9, k, _oracle),
    ]


# ---- block lemmas ---------------------------------------------------------

def _pair(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    t = random_matrix(rng, n)
    s = t.copy() if index == 0 else random_matrix(rng, n)
    return n, q, t, s


def _antidiag(t, s):
    z = np.zeros_like(t)
    return np.block([[z, t], [s, z]])


def _offdiag_swap(cfg, rng, index):
    n, q, t, s = _pair(cfg, rng, index)
    err = abs(_w(_antidiag(t, s), q, cfg) - _w(_antidiag(s, t), q, cfg))
    return AXIOM_TOL - err, {"T": mat(t), "S": mat(s), "q": q}


def _offdiag_phase(cfg, rng, index):
    n, q, t, s = _pair(cfg, rng, index)
    theta = 0.0 if index == 0 else float(rng.uniform(0, 2 * math.pi))
    err = abs(_w(_antidiag(t, np.exp(1j * theta) * s), q, cfg) - _w(_antidiag(t, s), q, cfg))
    return AXIOM_TOL - err, {"T": mat(t), "S": mat(s), "q": q, "theta": theta}


def _diag_swap(cfg, rng, index):
    n, q, t, s = _pair(cfg, rng, index)
    z = np.zeros_like(t)
    err = abs(_w(np.block([[t, z], [z, s]]), q, cfg) - _w(np.block([[s, z], [z, t]]), q, cfg))
    return AXIOM_TOL - err, {"T": mat(t), "S": mat(s), "q": q}


def _direct_sum(cfg, rng, index):
    n, q = _dim(cfg, index), _q(rng)
    blocks = [random_matrix(rng, n) for _ in range(2 + index % 3)]
    rep = direct_sum_bounds(blocks, q, cfg.ascent, tol=AXIOM_TOL)
    slack = AXIOM_TOL + min(rep.lower_slack, rep.upper_slack)
    return slack, {"blocks": [mat(b) for b in blocks], "q": q}


def block_properties(cfg: SuiteConfig) -> List[PropertySpec]:
    k = cfg.count(200)
    return [
        PropertySpec("blocks/offdiagonal-swap", ("offdiagonal-swap",), AXIOM_TOL, k, _offdiag_swap),
        PropertySpec("blocks/offdiagonal-phase", ("offdiagonal-phase",), AXIOM_TOL, k, _offdiag_phase),
        PropertySpec("blocks/diagonal-swap", ("diagonal-swap",), AXIOM_TOL, k, _diag_swap),
        PropertySpec("blocks/direct-sum", ("direct-sum-sandwich", "pair-direct-sum-sandwich"),
                     AXIOM_TOL, k, _direct_sum),
    ]


# ---- sandwich ---------------------------------------------------------------

def cell_blocks(family: str, n: int, d: int, seed: int, s: int) -> list:
    rng = np.random.default_rng([seed, zlib.crc32(family.encode()), n, d, s])
    count = 2 if family in TRIDIAGONAL_FAMILIES else n
    return [random_matrix(rng, d) for _ in range(count)]


@lru_cache(maxsize=8192)
def _cell_report(family, n, d, q, seed, s, ascent: AscentConfig):
    spec = make_spec(family, n, cell_blocks(family, n, d, seed, s))
    return theorem_bounds(spec, q, ascent, tol=SANDWICH_TOL)


def _seeds(cfg: SuiteConfig) -> int:
    return cfg.count(cfg.sandwich_seeds)


def _sandwich_cell(family, n, cfg, rng, index):
    seeds = _seeds(cfg)
    s, rest = index % seeds, index // seeds
    q = cfg.q_grid[rest % len(cfg.q_grid)]
    d = cfg.block_dims[rest // len(cfg.q_grid)]
    rep = _cell_report(family, n, d, q, cfg.seed, s, cfg.ascent)
    slack = SANDWICH_TOL + min(rep.lower_slack, rep.upper_slack)
    blocks = cell_blocks(family, n, d, cfg.seed, s)
    return slack, {"family": family, "n": n, "d": d, "q": q, "cell_seed": s,
                   "blocks": [mat(b) for b in blocks], "lower": rep.lower,
                   "whole": rep.whole_estimate, "upper": rep.upper, "escalated": rep.escalated}


def _collapse_cell(family, cfg, rng, index):
    seeds = _seeds(cfg)
    s, rest = index % seeds, index // seeds
    n = cfg.n_values[rest % len(cfg.n_values)]
    d = cfg.block_dims[rest // len(cfg.n_values)]
    rep = _cell_report(family, n, d, 1.0, cfg.seed, s, cfg.ascent)
    blocks = cell_blocks(family, n, d, cfg.seed, s)
    return SANDWICH_TOL - abs(rep.whole_estimate - rep.lower), {
        "family": family, "n": n, "d": d, "q": 1.0, "cell_seed": s,
        "blocks": [mat(b) for b in blocks], "lower": rep.lower, "whole": rep.whole_estimate}


def _special_cell(tag, family, cfg, rng, index):
    reps = SPECIAL_SEEDS if cfg.trials is None else cfg.trials
    s, rest = index % reps, index // reps
    q = cfg.q_grid[rest % len(cfg.q_grid)]
    rest //= len(cfg.q_grid)
    d = cfg.block_dims[rest % len(cfg.block_dims)]
    n = cfg.n_values[rest // len(cfg.block_dims)]
    base = random_matrix(rng, d)
    rep = special_case_bounds(tag, base, n, q, cfg.ascent, family=family, tol=SANDWICH_TOL)
    err = max(abs(r - c * rep.base_radius) for r, c in zip(rep.block_radii, rep.coefficients))
    slack = AXIOM_TOL - err
    if not rep.ok:
        slack = min(slack, SANDWICH_TOL + min(rep.lower_slack, rep.upper_slack))
    return slack, {"tag": tag, "family": family, "n": n, "d": d, "q": q, "base": mat(base)}


def _example_tridiagonal(cfg, rng, index):
    q = EXAMPLE_QS[index]
    spec = make_spec("tridiagonal", 3, [[[2.0]], [[1.0]]])
    rep = theorem_bounds(spec, q, cfg.ascent, tol=SANDWICH_TOL)
    c = 2 + math.sqrt(2)
    p = math.sqrt(max(0.0, 1 - q * q))
    slack = min(1e-12 - abs(rep.lower - c * q), 1e-12 - abs(rep.upper - c * (q + 2 * p)),
                SANDWICH_TOL + min(rep.lower_slack, rep.upper_slack))
    if q == 1.0:
        slack = min(slack, 1e-6 - abs(rep.whole_estimate - c))
    return slack, {"q": q, "lower": rep.lower, "whole": rep.whole_estimate, "upper": rep.upper}


def _example_symmetric(cfg, rng, index):
    q = EXAMPLE_QS[index]
    spec = make_spec("circulant", 2, [[[0.1]], [[1 / 24]]])
    rep = theorem_bounds(spec, q, cfg.ascent, tol=SANDWICH_TOL)
    slack = min(1e-6 - abs(rep.whole_estimate - (1 / 24 + q / 10)),
                1e-12 - abs(rep.lower - 17 * q / 120),
                SANDWICH_TOL + min(rep.lower_slack, rep.upper_slack))
    return slack, {"q": q, "lower": rep.lower, "whole": rep.whole_estimate, "upper": rep.upper}


def _example_all_ones(cfg, rng, index):
    q = EXAMPLE_QS[index]
    spec = make_spec("circulant", 2, [[[1.0]], [[1.0]]])
    rep = theorem_bounds(spec, q, cfg.ascent, tol=SANDWICH_TOL)
    p = math.sqrt(max(0.0, 1 - q * q))
    chain = min(1 + q - 2 * q, 2 * (q + 2 * p) - (1 + q))
    slack = min(1e-6 - abs(rep.whole_estimate - (1 + q)), 1e-12 - abs(rep.lower - 2 * q),
                1e-12 - abs(rep.upper - 2 * (q + 2 * p)), chain)
    return slack, {"q": q, "lower": rep.lower, "whole": rep.whole_estimate, "upper": rep.upper}


def sandwich_claims(family: str, n: int) -> tuple:
    claims = [f"{_slug(family)}-sandwich"]
    if n == 2 and family in CIRCULANT_FAMILIES + ("tridiagonal",):
        claims.append(f"{_slug(family)}-pair")
    if n == 3 and family == "tridiagonal":
        claims.append("tridiagonal-three-block")
    return tuple(claims)


def sandwich_properties(cfg: SuiteConfig) -> List[PropertySpec]:
    seeds = _seeds(cfg)
    cells = len(cfg.block_dims) * len(cfg.q_grid) * seeds
    out = []
    for fam in FAMILIES:
        for n in cfg.n_values:
            out.append(PropertySpec(f"sandwich/{fam}/n={n}", sandwich_claims(fam, n), SANDWICH_TOL,
                                    cells, partial(_sandwich_cell, fam, n)))
        out.append(PropertySpec(f"collapse/{fam}", (f"{_slug(fam)}-q1-equality",), SANDWICH_TOL,
                                len(cfg.n_values) * len(cfg.block_dims) * seeds,
                                partial(_collapse_cell, fam)))
    reps = SPECIAL_SEEDS if cfg.trials is None else cfg.trials
    special_trials = len(cfg.n_values) * len(cfg.block_dims) * len(cfg.q_grid) * reps
    for fam in ("tridiagonal", "anti_tridiagonal"):
        for tag in SPECIAL_TAGS:
            out.append(PropertySpec(f"special/{fam}/{tag}", (f"{_slug(fam)}-special-cases",), AXIOM_TOL,
                                    special_trials, partial(_special_cell, tag, fam)))
    out += [
        PropertySpec("example/tridiagonal-3x3", ("tridiagonal-example",), SANDWICH_TOL,
                     len(EXAMPLE_QS), _example_tridiagonal),
        PropertySpec("example/symmetric-pair", ("symmetric-pair-example",), 1e-6,
                     len(EXAMPLE_QS), _example_symmetric),
        PropertySpec("example/all-ones", ("all-ones-example",), 1e-6, len(EXAMPLE_QS), _example_all_ones),
    ]
    return out


# ---- classical limit ----------------------------------------------------------

def _norm_equivalence(cfg, rng, index):
    n = _dim(cfg, index)
    if index == 0:
        a = np.diag([1.0, -2.0]).astype(complex)
    elif index == 1:
        a = np.array([[0, 1], [0, 0]], dtype=complex)
    else:
        a = random_matrix(rng, n)
    w, nrm = _w(a, 1.0, cfg), operator_norm(a)
    return AXIOM_TOL + min(w - nrm / 2, nrm - w), {"A": mat(a), "w": w, "norm": nrm}


def _power(cfg, rng, index):
    a = random_matrix(rng, _dim(cfg, index))
    w = _w(a, 1.0, cfg)
    gap = min(w ** k - _w(np.linalg.matrix_power(a, k), 1.0, cfg) for k in (2, 3))
    return AXIOM_TOL + gap, {"A": mat(a), "w": w}


def _hermitian(cfg, rng, index):
    b = random_matrix(rng, _dim(cfg, index))
    h = (b + b.conj().T) / 2
    # for a Hermitian matrix the operator norm is the largest |eigenvalue|
    err = abs(_w(h, 1.0, cfg) - operator_norm(h))
    return AXIOM_TOL - err, {"A": mat(h)}


def jordan_block(n: int) -> np.ndarray:
    return np.eye(n, k=1, dtype=complex)


def _nilpotent(cfg, rng, index):
    n = 2 + index
    w = _w(jordan_block(n), 1.0, cfg)
    c = math.cos(math.pi / (n + 1))
    return min(c + 1e-6 - w, w - (c - 1e-4)), {"n": n, "w": w, "bound": c}


def classical_properties(cfg: SuiteConfig) -> List[PropertySpec]:
    k = cfg.count(200)
    return [
        PropertySpec("classical/norm-equivalence", ("norm-equivalence",), AXIOM_TOL, k, _norm_equivalence),
        PropertySpec("classical/power-inequality", ("power-inequality",), AXIOM_TOL, k, _power),
        PropertySpec("classical/hermitian-spectral", ("norm-equivalence",), AXIOM_TOL, k, _hermitian),
        PropertySpec("classical/nilpotent-bound", ("nilpotent-bound",), 1e-6, 5, _nilpotent),
    ]


# ---- reduction -------------------------------------------------------------------

def _reduction(family, cfg, rng, index):
    reps = cfg.count(2)
    s, rest = index % reps, index // reps
    n = REDUCTION_NS[rest % len(REDUCTION_NS)]
    d = REDUCTION_DS[rest // len(REDUCTION_NS)]
    count = 2 if family in TRIDIAGONAL_FAMILIES else n
    blocks = [np.eye(d, dtype=complex)] * count if s == 0 else [random_matrix(rng, d) for _ in range(count)]
    defect = unitarity_defect(reducing_unitary(family, n, d))
    _, _, residual = block_diagonalize(make_spec(family, n, blocks))
    return min(1e-10 - defect, 1e-9 - residual), {
        "family": family, "n": n, "d": d, "defect": defect, "residual": residual,
        "blocks": [mat(b) for b in blocks]}


def reduction_properties(cfg: SuiteConfig) -> List[PropertySpec]:
    trials = len(REDUCTION_NS) * len(REDUCTION_DS) * cfg.count(2)
    return [PropertySpec(f"reduction/{fam}", ("reducing-unitarity", f"{_slug(fam)}-reduction"), 1e-9,
                         trials, partial(_reduction, fam)) for fam in FAMILIES]


# ---- entry points ------------------------------------------------------------------

BUILDERS = {
    "axioms": axiom_properties,
    "blocks": block_properties,
    "sandwich": sandwich_properties,
    "classical": classical_properties,
    "reduction": reduction_properties,
}


def suite_properties(suite: str, cfg: SuiteConfig) -> List[PropertySpec]:
    if suite not in BUILDERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    return BUILDERS[suite](cfg)


def run_suite(suite: str, cfg: Optional[SuiteConfig] = None, workers: Optional[int] = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    return run_properties(suite, suite_properties(suite, cfg), cfg, workers)


def run_axiom_suite(cfg=None, workers=None):
    return run_suite("axioms", cfg, workers)


def run_block_lemma_suite(cfg=None, workers=None):
    return run_suite("blocks", cfg, workers)


def run_sandwich_suite(cfg=None, workers=None):
    return run_suite("sandwich", cfg, workers)


def run_classical_limit_suite(cfg=None, workers=None):
    return run_suite("classical", cfg, workers)


def run_reduction_suite(cfg=None, workers=None):
    return run_suite("reduction", cfg, workers)


def replay_trial(name: str, index: int, cfg: Optional[SuiteConfig] = None):
    """Re-run one trial of a property in isolation; returns ``(slack, inputs)``."""
    from .report import _run_one
    cfg = cfg or SuiteConfig()
    for suite in SUITES:
        for spec in suite_properties(suite, cfg):
            if spec.name == name:
                if not 0 <= index < spec.trials:
                    raise IndexError(f"{name} has {spec.trials} trials")
                return _run_one(spec.fn, cfg, name, index)
    raise KeyError(name)


# ---- coverage ------------------------------------------------------------------------

def load_claims() -> Dict[str, str]:
    text = resources.files("qradius.verify").joinpath("claims.json").read_text()
    return json.loads(text)


def coverage_manifest(cfg: Optional[SuiteConfig] = None, suites=SUITES) -> Dict[str, List[str]]:
    """claim id -> names of the properties that exercise it."""
    cfg = cfg or SuiteConfig()
    out: Dict[str, List[str]] = {}
    for suite in suites:
        for spec in suite_properties(suite, cfg):
            for c in spec.claims:
                out.setdefault(c, []).append(spec.name)
    return {k: sorted(v) for k, v in sorted(out.items())}


def run_all(cfg: Optional[SuiteConfig] = None, workers: Optional[int] = None) -> dict:
    cfg = cfg or SuiteConfig()
    reports = [run_suite(s, cfg, workers) for s in SUITES]
    return {
        "suite": "all",
        "passed": all(r.passed for r in reports),
        "failures": sum(r.failures for r in reports),
        "config": cfg.to_obj(),
        "suites": [r.to_obj() for r in reports],
        "coverage": coverage_manifest(cfg),
    }
