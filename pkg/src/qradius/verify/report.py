"""Suite configuration, property records and the trial runner.

Every property is a function ``fn(cfg, rng, index) -> (slack, inputs)``.
``slack`` is the tolerance minus the observed violation, so a trial fails
exactly when its slack is negative. ``inputs`` is a JSON-ready description
of the trial, enough to rebuild it.

Trial ``index`` of property ``name`` always draws from the stream
(seed, crc32(name), index); trials can therefore run in any order, in
parallel, or alone through ``replay_trial``.
"""
from __future__ import annotations

import json
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..linalg import matrix_to_obj
from ..qcore import AscentConfig

MAX_FAILING_CASES = 10


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: Optional[int] = None
    dims: Tuple[int, ...] = (2, 3, 4)
    n_values: Tuple[int, ...] = (2, 3, 4, 5)
    block_dims: Tuple[int, ...] = (1, 2)
    q_grid: Tuple[float, ...] = (0.2, 0.5, 0.8, 1.0)
    sandwich_seeds: int = 50
    ascent: AscentConfig = AscentConfig()

    def __post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.q_grid or any(not (0.0 < q <= 1.0) for q in self.q_grid):
            raise ValueError("q grid must lie in (0, 1]")

    def count(self, default: int) -> int:
        return default if self.trials is None else self.trials

    def to_obj(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "n_values": list(self.n_values),
            "block_dims": list(self.block_dims),
            "q_grid": list(self.q_grid),
            "sandwich_seeds": self.sandwich_seeds,
            "ascent": self.ascent.to_obj(),
        }


@dataclass(frozen=True)
class PropertySpec:
    name: str
    claims: Tuple[str, ...]
    tol: float
    trials: int
    fn: Callable


@dataclass
class PropertyRecord:
    name: str
    anchor: str
    claims: Tuple[str, ...]
    tol: float
    trials: int
    failures: int
    worst_slack: float
    worst_case: dict
    failing_cases: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "claims": list(self.claims),
            "tol": self.tol,
            "trials": self.trials,
            "failures": self.failures,
            "worst_slack": self.worst_slack,
            "worst_case": self.worst_case,
            "failing_cases": self.failing_cases,
        }


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    records: List[PropertyRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.records)

    def record(self, name: str) -> PropertyRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_obj(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "failures": self.failures,
            "config": self.config.to_obj(),
            "records": [r.to_obj() for r in sorted(self.records, key=lambda r: r.name)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2) + "\n"


def trial_rng(seed: int, name: str, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode()), index])


def mat(a) -> dict:
    return matrix_to_obj(np.asarray(a))


def cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _run_one(fn, cfg: SuiteConfig, name: str, index: int):
    slack, inputs = fn(cfg, trial_rng(cfg.seed, name, index), index)
    return float(slack), inputs


def worker_count() -> int:
    env = os.environ.get("RADIUS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def run_property(spec: PropertySpec, cfg: SuiteConfig, pool=None) -> PropertyRecord:
    job = partial(_run_one, spec.fn, cfg, spec.name)
    indices = range(spec.trials)
    results = list(pool.map(job, indices)) if pool is not None else [job(i) for i in indices]
    worst_i = min(range(len(results)), key=lambda i: results[i][0])
    failing = [i for i, (s, _) in enumerate(results) if s < 0]

    def case(i):
        return {"seed": cfg.seed, "index": i, "slack": results[i][0], "inputs": results[i][1]}

    return PropertyRecord(
        name=spec.name,
        anchor=spec.claims[0],
        claims=tuple(spec.claims),
        tol=spec.tol,
        trials=spec.trials,
        failures=len(failing),
        worst_slack=results[worst_i][0],
        worst_case=case(worst_i),
        failing_cases=[case(i) for i in failing[:MAX_FAILING_CASES]],
    )


def run_properties(suite: str, specs: Sequence[PropertySpec], cfg: SuiteConfig,
                   workers: Optional[int] = None) -> SuiteReport:
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [run_property(s, cfg, pool) for s in specs]
    else:
        records = [run_property(s, cfg) for s in specs]
    return SuiteReport(suite, cfg, records)
