"""The reduced objective for w_q.

For a fixed unit x, write m = <Ax, x> and w = Ax - m x (the part of Ax
orthogonal to x). Every admissible y has the form y = conj(q) x + v with
v orthogonal to x and ||v|| = p = sqrt(1 - |q|^2), so

    <Ax, y> = q m + <w, v>.

As v ranges over its sphere, <w, v> fills the closed disk of radius
p ||w|| (only its boundary circle when dim = 2, which does not change the
extremes). Hence

    sup_y |<Ax, y>|        = |q| |m| + p ||w||                 (modulus)
    sup_y Re(e^{-it} <Ax, y>) = Re(e^{-it} q m) + p ||w||      (support)

and w_q(A) = max over unit x of the first, h(t) = max of the second.

Gradients are taken with respect to conj(x); on the unit sphere the ascent
direction is G - Re<x, G> x.
"""
from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, InvalidRequest
from ..linalg import as_matrix, unit_vector
from .params import as_q

# below this (after normalising A) |m| or ||w|| is treated as a kink
KINK = 1e-12


def check_admissible(dim: int, qp) -> None:
    if dim == 1 and qp.modulus < 1.0:
        raise InvalidRequest("a 1x1 operator has no admissible pair x, y with |<x, y>| < 1")


def parts(a: np.ndarray, X: np.ndarray):
    """Row-batched (AX, m, W, r) for unit rows of X."""
    AX = X @ a.T
    m = np.einsum("ij,ij->i", AX, X.conj())
    W = AX - m[:, None] * X
    r = np.sqrt(np.einsum("ij,ij->i", W, W.conj()).real)
    return AX, m, W, r


def values(m, r, qabs, p, center=None):
    if center is None:
        return qabs * np.abs(m) + p * r
    return (center * m).real + p * r


def gradient(a, X, AX, m, W, r, qabs, p, center=None):
    AhX = X @ a.conj()
    if center is None:
        am = np.abs(m)
        G = np.zeros_like(X)
        ok = am > KINK
        if qabs > 0 and ok.any():
            cross = m.conj()[ok, None] * AX[ok] + m[ok, None] * AhX[ok]
            G[ok] = qabs * cross / am[ok, None]
    else:
        G = center[:, None] * AX + center.conj()[:, None] * AhX
    if p > 0:
        ok = r > KINK
        if ok.any():
            AhW = W[ok] @ a.conj()
            G[ok] += p * (AhW - m[ok].conj()[:, None] * W[ok]) / r[ok, None]
    G -= np.einsum("ij,ij->i", X.conj(), G).real[:, None] * X
    return G


def q_objective(a, x, q) -> float:
    """sup over admissible y of |<Ax, y>| for a fixed unit vector x."""
    a = as_matrix(a)
    qp = as_q(q)
    x = unit_vector(x, tol=1e-9)
    if x.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"vector length {x.shape[0]} does not match dim {a.shape[0]}")
    check_admissible(a.shape[0], qp)
    _, m, _, r = parts(a, x[None, :])
    return float(values(m, r, qp.modulus, qp.p)[0])
