"""Dense complex matrix primitives.

Matrices are plain ``complex128`` numpy arrays. ``as_matrix`` is the single
entry point that validates shape and finiteness; everything downstream
assumes a validated square array.

Inner products follow ``<u, v> = sum(u_i * conj(v_i))`` (linear in the first
argument), so ``<Ax, x> = x^H A x``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, MatrixFormatError

UNIT_TOL = 1e-12
POWER_MAX_ITERS = 10_000


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex128 array (a fresh copy)."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise MatrixFormatError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise MatrixFormatError("matrix has non-finite entries")
    return m


def unit_vector(v, tol: float = UNIT_TOL) -> np.ndarray:
    u = np.asarray(v, dtype=np.complex128).reshape(-1)
    if abs(np.linalg.norm(u) - 1.0) > tol:
        raise MatrixFormatError(f"vector norm {np.linalg.norm(u)!r} is not 1")
    return u


def inner(u, v) -> complex:
    """``<u, v>``, linear in ``u``."""
    return complex(np.vdot(v, u))


def mat_apply(a: np.ndarray, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if a.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"cannot apply {a.shape} matrix to vector of length {x.shape[0]}")
    return a @ x


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T.copy()


@dataclass(frozen=True)
class NormEstimate:
    value: float
    iterations: int
    converged: bool


def power_norm(a: np.ndarray, seed: int = 0, tol: float = 1e-10,
               max_iters: int = POWER_MAX_ITERS) -> NormEstimate:
    """Largest singular value by power iteration on ``A^H A``.

    Stops once the eigen-residual of the Rayleigh quotient drops below
    ``tol`` relative to it; the quotient error is then at most ``tol``
    relative as well. On cap hit the best quotient seen is returned with
    ``converged=False``.
    """
    a = np.asarray(a, dtype=np.complex128)
    gram = np.conj(a).T @ a
    scale = float(np.max(np.abs(gram))) if gram.size else 0.0
    if scale == 0.0:
        return NormEstimate(0.0, 0, True)
    gram = gram / scale
    rng = np.random.default_rng(seed)
    n = gram.shape[0]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    best = 0.0
    for it in range(1, max_iters + 1):
        w = gram @ v
        rho = float(np.vdot(v, w).real)
        best = max(best, rho)
        resid = np.linalg.norm(w - rho * v)
        if rho <= 0.0:
            # v annihilated: gram is nilpotent on this start only if gram == 0
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v /= np.linalg.norm(v)
            continue
        if resid <= tol * rho:
            return NormEstimate(math.sqrt(best * scale), it, True)
        v = w / np.linalg.norm(w)
    return NormEstimate(math.sqrt(best * scale), max_iters, False)


def operator_norm(a: np.ndarray, seed: int = 0) -> float:
    return power_norm(a, seed=seed).value


def unitarity_defect(u: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.complex128)
    return float(np.max(np.abs(np.conj(u).T @ u - np.eye(u.shape[0]))))


def assemble_blocks(layout: Sequence[Sequence[Optional[np.ndarray]]], d: int) -> np.ndarray:
    """Place an n-by-n grid of d-by-d blocks; ``None`` cells are zero blocks."""
    n = len(layout)
    out = np.zeros((n * d, n * d), dtype=np.complex128)
    for i, row in enumerate(layout):
        if len(row) != n:
            raise MatrixFormatError("block layout must be square")
        for j, blk in enumerate(row):
            if blk is None:
                continue
            b = np.asarray(blk, dtype=np.complex128)
            if b.ndim == 0 and d == 1:
                b = b.reshape(1, 1)
            if b.shape != (d, d):
                raise MatrixFormatError(f"block ({i}, {j}) has shape {b.shape}, expected {(d, d)}")
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = b
    return out


def extract_block(m: np.ndarray, i: int, j: int, d: int) -> np.ndarray:
    return np.array(m[i * d:(i + 1) * d, j * d:(j + 1) * d])


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [as_matrix(b) for b in blocks]
    n = len(blocks)
    d = blocks[0].shape[0]
    return assemble_blocks([[blocks[i] if i == j else None for j in range(n)] for i in range(n)], d)


def random_matrix(rng: np.random.Generator, n: int, normalize: bool = True) -> np.ndarray:
    """Complex Gaussian matrix, scaled to unit operator norm by default."""
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    if normalize:
        a /= np.linalg.norm(a, 2)
    return a


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


# -- JSON wire format: {"dim": n, "entries": [[re, im], ...]} row-major ---------

def _reject_constant(token):
    raise MatrixFormatError(f"non-finite number {token!r} in matrix JSON")


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise MatrixFormatError('matrix JSON needs "dim" and "entries"')
    n = obj["dim"]
    entries = obj["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f"dim must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise MatrixFormatError(f"expected {n * n} entries")
    vals = []
    for e in entries:
        if isinstance(e, (int, float)) and not isinstance(e, bool):
            vals.append(complex(e, 0.0))
        elif isinstance(e, list) and len(e) == 2 and all(
                isinstance(c, (int, float)) and not isinstance(c, bool) for c in e):
            vals.append(complex(e[0], e[1]))
        else:
            raise MatrixFormatError(f"bad matrix entry {e!r}")
    return as_matrix(np.array(vals).reshape(n, n))


def matrix_to_obj(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {"dim": int(a.shape[0]),
            "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)]}


def loads_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_obj(obj)


def dumps_matrix(a: np.ndarray) -> str:
    return json.dumps(matrix_to_obj(a))
