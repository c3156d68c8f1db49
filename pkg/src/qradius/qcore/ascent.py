"""Multi-start projected gradient ascent on the unit sphere.

All restarts advance together as rows of one array. Each row keeps its own
step size: a trial step x + t G is retracted to the sphere and accepted
under an Armijo test, otherwise t is halved. After an accepted step the
next trial step is the Barzilai-Borwein length |s|^2 / |<s, dG>|, which is
what keeps the iteration count low on poorly scaled maxima. A row stops
when its relative gain falls below ``tol`` with a small gradient, when the
gradient vanishes, or when the step underflows.

Restart r always starts from a vector drawn from the stream (seed, r), so
results do not depend on how restarts are scheduled.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import objective as obj

ARMIJO = 1e-4
MAX_STEP = 1e4


@dataclass(frozen=True)
class AscentConfig:
    restarts: int = 64
    max_iters: int = 2000
    tol: float = 1e-10
    seed: int = 0

    def escalated(self, factor: int = 4) -> "AscentConfig":
        return replace(self, restarts=self.restarts * factor)

    def to_obj(self) -> dict:
        return {"restarts": self.restarts, "max_iters": self.max_iters,
                "tol": self.tol, "seed": self.seed}


def start_vectors(dim: int, count: int, seed: int, offset: int = 0) -> np.ndarray:
    out = np.empty((count, dim), dtype=np.complex128)
    for k in range(count):
        rng = np.random.default_rng([seed, offset + k])
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        out[k] = v / np.linalg.norm(v)
    return out


def ascend(a, X, qabs, p, center=None, max_iters=2000, tol=1e-10):
    """Run the batched ascent from the unit rows of ``X`` (modified in place).

    ``a`` should be normalised to O(1) scale. Returns ``(X, vals, converged)``.
    """
    rows = X.shape[0]
    AX, m, W, r = obj.parts(a, X)
    vals = obj.values(m, r, qabs, p, center)
    G = obj.gradient(a, X, AX, m, W, r, qabs, p, center)
    step = np.ones(rows)
    active = np.ones(rows, dtype=bool)
    converged = np.zeros(rows, dtype=bool)
    gnorm2 = np.einsum("ij,ij->i", G, G.conj()).real
    flat = gnorm2 < 1e-28
    active[flat] = False
    converged[flat] = True

    for _ in range(max_iters):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        Xa, Ga = X[idx], G[idx]
        ca = None if center is None else center[idx]
        Y = Xa + step[idx, None] * Ga
        Y /= np.linalg.norm(Y, axis=1)[:, None]
        AY, my, Wy, ry = obj.parts(a, Y)
        vy = obj.values(my, ry, qabs, p, ca)
        acc = vy >= vals[idx] + ARMIJO * step[idx] * gnorm2[idx]

        ai = idx[acc]
        if ai.size:
            cy = None if ca is None else ca[acc]
            Gy = obj.gradient(a, Y[acc], AY[acc], my[acc], Wy[acc], ry[acc], qabs, p, cy)
            s = Y[acc] - Xa[acc]
            curv = -np.einsum("ij,ij->i", s.conj(), Gy - Ga[acc]).real
            ss = np.einsum("ij,ij->i", s.conj(), s).real
            bb = np.where(curv > 1e-300, ss / np.where(curv > 1e-300, curv, 1.0), 2.0 * step[ai])
            gain = vy[acc] - vals[ai]
            X[ai], AX[ai], m[ai], W[ai], r[ai] = Y[acc], AY[acc], my[acc], Wy[acc], ry[acc]
            vals[ai] = vy[acc]
            G[ai] = Gy
            step[ai] = np.clip(bb, 1e-8, MAX_STEP)
            gn = np.einsum("ij,ij->i", Gy, Gy.conj()).real
            gnorm2[ai] = gn
            scale = np.maximum(np.abs(vals[ai]), 1e-300)
            done = ((gain <= tol * scale) & (gn <= 1e-10)) | (gn <= 1e-14 * np.maximum(scale, 1.0) ** 2)
            active[ai[done]] = False
            converged[ai[done]] = True

        rej = idx[~acc]
        step[rej] *= 0.5
        stalled = rej[step[rej] < 1e-15]
        active[stalled] = False
        converged[stalled] = True
    return X, vals, converged
