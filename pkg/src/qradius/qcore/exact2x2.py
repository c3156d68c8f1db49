"""Closed-form q-numerical range of 2x2 matrices.

Every 2x2 matrix is unitarily similar to e^{it} [[g, a], [b, g]] with
0 <= b <= a, and then

    W_q = e^{it} { g q + r ((c + p d) cos s + i (d + p c) sin s) : 0 <= r <= 1 }

where c = (a + b)/2, d = (a - b)/2, p = sqrt(1 - q^2) and q = |q|.
So W_q is a filled ellipse and w_q is the largest modulus on its rim.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import MatrixFormatError
from ..linalg import as_matrix
from .params import as_q

GRID = 4096

FLIP = np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class Ellipse2x2:
    t: float
    gamma: complex
    a: float
    b: float
    q: float

    @property
    def c(self) -> float:
        return (self.a + self.b) / 2

    @property
    def d(self) -> float:
        return (self.a - self.b) / 2

    @property
    def p(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.q * self.q))

    @property
    def semi_axes(self):
        return self.c + self.p * self.d, self.d + self.p * self.c

    @property
    def center(self) -> complex:
        return cmath.exp(1j * self.t) * self.gamma * self.q

    def rim(self, s) -> np.ndarray:
        """Boundary points of W_q at parameter values ``s``."""
        s = np.asarray(s, dtype=float)
        u, v = self.semi_axes
        return cmath.exp(1j * self.t) * (self.gamma * self.q + u * np.cos(s) + 1j * v * np.sin(s))


def _split(a: np.ndarray):
    if a.shape != (2, 2):
        raise MatrixFormatError(f"expected a 2x2 matrix, got {a.shape}")
    tau = (a[0, 0] + a[1, 1]) / 2
    return tau, a - tau * np.eye(2)


def canonical_form_2x2(a):
    """Constructive reduction: returns ``(V, t, gamma, a, b)`` with
    ``V^H A V = e^{it} [[gamma, a], [b, gamma]]`` and ``0 <= b <= a``.
    """
    a = as_matrix(a)
    tau, nz = _split(a)
    # x with <Nx, x> = 0: balance the eigenvectors of Re N, then fix the
    # relative phase so that <(Im N) x, x> vanishes too.
    h = (nz + nz.conj().T) / 2
    k = (nz - nz.conj().T) / 2j
    _, vecs = np.linalg.eigh(h)
    u1, u2 = vecs[:, 1], vecs[:, 0]
    kappa = np.vdot(u1, k @ u2)
    theta = math.pi / 2 - cmath.phase(kappa) if abs(kappa) > 0 else 0.0
    ph = cmath.exp(1j * theta)
    w = np.column_stack([(u1 + ph * u2), (u1 - ph * u2)]) / math.sqrt(2)
    bmat = w.conj().T @ nz @ w
    a1, b1 = bmat[0, 1], bmat[1, 0]
    arg_a = cmath.phase(a1) if abs(a1) > 0 else 0.0
    arg_b = cmath.phase(b1) if abs(b1) > 0 else 0.0
    t = (arg_a + arg_b) / 2
    phi = (arg_b - arg_a) / 2
    v = w @ np.diag([1.0, cmath.exp(1j * phi)])
    big, small = abs(a1), abs(b1)
    if small > big:
        v = v @ FLIP
        big, small = small, big
    return v, t, cmath.exp(-1j * t) * tau, big, small


def _invariants(a: np.ndarray, q: float) -> Ellipse2x2:
    # a^2 + b^2 = ||N||_F^2 and ab = |det N| pin down (a, b); det N = -e^{2it} ab
    tau, nz = _split(a)
    f2 = float(np.sum(np.abs(nz) ** 2))
    det = nz[0, 0] * nz[1, 1] - nz[0, 1] * nz[1, 0]
    prod = abs(det)
    s_plus = math.sqrt(max(f2 + 2 * prod, 0.0))
    s_minus = math.sqrt(max(f2 - 2 * prod, 0.0))
    t = cmath.phase(-det) / 2 if prod > 0 else 0.0
    return Ellipse2x2(t=t, gamma=cmath.exp(-1j * t) * tau,
                      a=(s_plus + s_minus) / 2, b=(s_plus - s_minus) / 2, q=q)


def exact_2x2(a, q):
    """Return ``(Ellipse2x2, radius)`` for a 2x2 matrix."""
    a = as_matrix(a)
    q = as_q(q).modulus
    ell = _invariants(a, q)
    u, v = ell.semi_axes
    g = ell.gamma * q

    def modulus(s):
        return abs(g + u * math.cos(s) + 1j * v * math.sin(s))

    s = np.arange(GRID) * (2 * math.pi / GRID)
    vals = np.abs(g + u * np.cos(s) + 1j * v * np.sin(s))
    k = int(np.argmax(vals))
    best = float(vals[k])
    h = 2 * math.pi / GRID
    res = minimize_scalar(lambda x: -modulus(x), bounds=(s[k] - h, s[k] + h),
                          method="bounded", options={"xatol": 1e-12})
    return ell, max(best, -float(res.fun))
