from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import MatrixFormatError
from ..linalg import as_matrix, inner
from . import objective as obj
from .ascent import AscentConfig, ascend, start_vectors
from .params import QParameter, as_q


@dataclass(frozen=True)
class RadiusEstimate:
    """A lower estimate of w_q(A) with the unit pair (x, y) that attains it."""

    value: float
    witness_x: np.ndarray
    witness_y: np.ndarray
    restarts_used: int
    converged: bool
    max_gap: float
    q: complex = 1.0

    def constraint_residual(self) -> float:
        return abs(inner(self.witness_x, self.witness_y) - self.q)

    def witness_value(self, a) -> complex:
        return inner(as_matrix(a) @ self.witness_x, self.witness_y)

    def to_obj(self) -> dict:
        def vec(v):
            return [[float(z.real), float(z.imag)] for z in v]
        return {
            "value": self.value,
            "q": [self.q.real, self.q.imag],
            "witness_x": vec(self.witness_x),
            "witness_y": vec(self.witness_y),
            "constraint_residual": self.constraint_residual(),
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "max_gap": self.max_gap,
        }


def _orthogonal_unit(x: np.ndarray) -> np.ndarray:
    j = int(np.argmin(np.abs(x)))
    e = np.zeros_like(x)
    e[j] = 1.0
    z = e - np.vdot(x, e) * x
    return z / np.linalg.norm(z)


def witness_pair(a: np.ndarray, x: np.ndarray, qp: QParameter):
    """The y maximising |<Ax, y>| subject to <x, y> = q, ||y|| = 1."""
    ax = a @ x
    m = np.vdot(x, ax)
    w = ax - m * x
    r = np.linalg.norm(w)
    scale = max(float(np.linalg.norm(a)), 1e-300)
    if x.shape[0] == 1:
        return np.conj(qp.q) * x
    z = w / r if r > obj.KINK * scale else _orthogonal_unit(x)
    qm = qp.q * m
    rot = cmath.exp(-1j * cmath.phase(qm)) if abs(qm) > 0 else 1.0
    # <Ax, p e^{i phi} z> = p e^{-i phi} r, aligned with q m when e^{i phi} = rot
    return np.conj(qp.q) * x + qp.p * rot * z


def _running_gap(vals: np.ndarray) -> float:
    best = np.maximum.accumulate(vals)
    if best.size < 2:
        return 0.0
    tail = np.diff(best)[-3:]
    return float(tail.max())


def estimate_radius(a, q, cfg: Optional[AscentConfig] = None) -> RadiusEstimate:
    """Estimate w_q(A) = sup |<Ax, y>| over unit x, y with <x, y> = q.

    The returned value is attained by the witness pair, so it never exceeds
    the true radius.
    """
    a = as_matrix(a)
    qp = as_q(q)
    cfg = cfg or AscentConfig()
    if cfg.restarts < 1:
        raise MatrixFormatError("restarts must be at least 1")
    n = a.shape[0]
    obj.check_admissible(n, qp)

    scale = float(np.linalg.norm(a))
    if n == 1:
        x = np.ones(1, dtype=np.complex128)
        return RadiusEstimate(abs(a[0, 0]), x, np.conj(qp.q) * x, 0, True, 0.0, qp.q)
    if scale == 0.0:
        x = np.zeros(n, dtype=np.complex128)
        x[0] = 1.0
        return RadiusEstimate(0.0, x, witness_pair(a, x, qp), 0, True, 0.0, qp.q)

    X = start_vectors(n, cfg.restarts, cfg.seed)
    X, vals, conv = ascend(a / scale, X, qp.modulus, qp.p, max_iters=cfg.max_iters, tol=cfg.tol)
    best = int(np.argmax(vals))
    x = X[best] / np.linalg.norm(X[best])
    y = witness_pair(a, x, qp)
    value = abs(inner(a @ x, y))
    return RadiusEstimate(
        value=float(value),
        witness_x=x,
        witness_y=y,
        restarts_used=cfg.restarts,
        converged=bool(conv[best]),
        max_gap=_running_gap(vals) * scale,
        q=qp.q,
    )


def scalar_radius(t, q) -> float:
    """Radius convention for 1x1 blocks: |t| |q|.

    No admissible pair exists in dimension one when |q| < 1; this is the
    value the scalar appears with once embedded in a larger space.
    """
    return abs(complex(t)) * as_q(q).modulus
