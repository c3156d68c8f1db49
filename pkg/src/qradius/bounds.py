"""Lower/upper sandwich bounds for block operator matrices.

Every structured family reduces, by a unitary similarity, to a direct sum
of blocks B_k. With L = max_k w_q(B_k) and K(q) = (|q| + 2 sqrt(1 - |q|^2)) / |q|,

    L <= w_q(whole) <= K(q) L.

A report carries both sides, an optimizer estimate of the whole matrix
and the two verdicts with their slacks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidRequest
from .linalg import as_matrix, block_diag
from .qcore import AscentConfig, as_q, estimate_radius, exact_2x2, scalar_radius
from .structured import FamilyConstants, StructuredSpec, build_structured, make_spec, reduce_to_blocks

VERDICT_TOL = 1e-6
ESCALATION = 4

SPECIAL_TAGS = ("T_zero", "S_zero", "T_equals_S", "S_equals_iT")


def k_factor(q) -> float:
    qp = as_q(q)
    if qp.modulus == 0.0:
        raise InvalidRequest("the bound factor is unbounded at q = 0")
    return (qp.modulus + 2.0 * qp.p) / qp.modulus


def block_radius(block, q, cfg: Optional[AscentConfig] = None) -> float:
    """w_q of one block using the strongest oracle for its size."""
    b = as_matrix(block)
    qp = as_q(q)
    if b.shape[0] == 1:
        return scalar_radius(b[0, 0], qp)
    if b.shape[0] == 2:
        return exact_2x2(b, qp)[1]
    return estimate_radius(b, qp, cfg).value


@dataclass
class BoundsReport:
    family: str
    n: int
    q: float
    k_factor: float
    block_labels: List[int]
    block_radii: List[float]
    lower: float
    upper: float
    whole_estimate: float
    lower_ok: bool
    upper_ok: bool
    lower_slack: float
    upper_slack: float
    cfg: AscentConfig
    escalated: bool = False
    tol: float = VERDICT_TOL
    q_input: complex = 0.0
    coefficients: Optional[List[float]] = None
    base_radius: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_obj(self) -> dict:
        out = {
            "family": self.family,
            "n": self.n,
            "q": self.q,
            "q_input": [complex(self.q_input).real, complex(self.q_input).imag],
            "k_factor": self.k_factor,
            "block_labels": list(self.block_labels),
            "block_radii": list(self.block_radii),
            "lower": self.lower,
            "upper": self.upper,
            "whole_estimate": self.whole_estimate,
            "verdict": {
                "lower_ok": self.lower_ok,
                "upper_ok": self.upper_ok,
                "lower_slack": self.lower_slack,
                "upper_slack": self.upper_slack,
                "tol": self.tol,
                "escalated": self.escalated,
            },
            "cfg": {"seed": self.cfg.seed, "restarts": self.cfg.restarts,
                    "tol": self.cfg.tol, "max_iters": self.cfg.max_iters},
        }
        if self.coefficients is not None:
            out["coefficients"] = list(self.coefficients)
            out["base_radius"] = self.base_radius
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _sandwich(family, n, labels, blocks, whole, q, cfg, tol) -> BoundsReport:
    qp = as_q(q)
    kf = k_factor(qp)
    cfg = cfg or AscentConfig()
    radii = [float(block_radius(b, qp, cfg)) for b in blocks]
    lower = max(radii)
    upper = kf * lower

    est = estimate_radius(whole, qp, cfg).value
    escalated = False
    if est < lower - tol:
        # the estimate only approaches w_q from below; retry with more starts
        cfg = cfg.escalated(ESCALATION)
        est = max(est, estimate_radius(whole, qp, cfg).value)
        escalated = True
    return BoundsReport(
        family=family, n=n, q=qp.modulus, k_factor=kf,
        block_labels=list(labels), block_radii=radii,
        lower=lower, upper=upper, whole_estimate=float(est),
        lower_ok=bool(est >= lower - tol), upper_ok=bool(est <= upper + tol),
        lower_slack=float(est - lower), upper_slack=float(upper - est),
        cfg=cfg, escalated=escalated, tol=tol, q_input=qp.q,
    )


def direct_sum_bounds(blocks: Sequence, q, cfg: Optional[AscentConfig] = None,
                      tol: float = VERDICT_TOL) -> BoundsReport:
    """Sandwich for a finite direct sum of equally sized blocks."""
    mats = [as_matrix(b) for b in blocks]
    if not mats:
        raise DimensionMismatch("direct sum needs at least one block")
    if any(m.shape != mats[0].shape for m in mats):
        raise DimensionMismatch("direct sum blocks must share one shape")
    rep = _sandwich("direct_sum", len(mats), range(len(mats)), mats, block_diag(mats), q, cfg, tol)
    rep.notes.append("finite direct sums only")
    return rep


def theorem_bounds(spec: StructuredSpec, q, cfg: Optional[AscentConfig] = None,
                   tol: float = VERDICT_TOL) -> BoundsReport:
    """Sandwich for a structured operator matrix using its reduced blocks."""
    k_factor(q)
    blocks = reduce_to_blocks(spec)
    return _sandwich(spec.family, spec.n, spec.labels, blocks, build_structured(spec), q, cfg, tol)


def special_pair(tag: str, base):
    """(T, S) for one of the special cases of the tridiagonal families."""
    base = as_matrix(base)
    zero = np.zeros_like(base)
    if tag == "T_zero":
        return zero, base
    if tag == "S_zero":
        return base, zero
    if tag == "T_equals_S":
        return base, base.copy()
    if tag == "S_equals_iT":
        return base, 1j * base
    raise InvalidRequest(f"unknown special case {tag!r}; expected one of {SPECIAL_TAGS}")


def special_coefficients(tag: str, n: int) -> List[float]:
    """|block_k| / |base| for each k = 1..n: every reduced block is a multiple of base."""
    cos = FamilyConstants.for_n(n).cosines
    if tag == "T_zero":
        return [abs(c) for c in cos]
    if tag == "S_zero":
        return [1.0] * n
    if tag == "T_equals_S":
        return [abs(1.0 + c) for c in cos]
    if tag == "S_equals_iT":
        return [abs(1.0 + 1j * c) for c in cos]
    raise InvalidRequest(f"unknown special case {tag!r}; expected one of {SPECIAL_TAGS}")


def special_case_bounds(tag: str, base, n: int, q, cfg: Optional[AscentConfig] = None,
                        family: str = "tridiagonal", tol: float = VERDICT_TOL) -> BoundsReport:
    if family not in ("tridiagonal", "anti_tridiagonal"):
        raise InvalidRequest("special cases are defined for tridiagonal and anti_tridiagonal")
    t, s = special_pair(tag, base)
    rep = theorem_bounds(make_spec(family, n, [t, s]), q, cfg, tol)
    rep.coefficients = special_coefficients(tag, n)
    rep.base_radius = float(block_radius(base, q, cfg))
    rep.notes.append(f"special case {tag}")
    return rep


def k_factor_grid(points: int = 100) -> np.ndarray:
    qs = np.linspace(1.0 / points, 1.0, points)
    return np.array([k_factor(float(q)) for q in qs])


__all__ = [
    "BoundsReport", "SPECIAL_TAGS", "VERDICT_TOL", "block_radius", "direct_sum_bounds",
    "k_factor", "k_factor_grid", "special_case_bounds", "special_coefficients",
    "special_pair", "theorem_bounds",
]
