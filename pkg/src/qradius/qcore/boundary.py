"""Support function of W_q and boundary tracing.

h(t) = max over z in W_q of Re(e^{-it} z). Because W_q is convex it equals
the intersection of the half-planes Re(e^{-it} z) <= h(t); on a uniform
angle grid the vertices of that polygon are the intersections of
consecutive support lines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..linalg import as_matrix
from . import objective as obj
from .ascent import AscentConfig, ascend, start_vectors
from .params import as_q

BOUNDARY_RESTARTS = 8


@dataclass(frozen=True)
class BoundaryTrace:
    thetas: np.ndarray
    support_values: np.ndarray
    points: np.ndarray

    def support_violation(self) -> float:
        """max over vertices and grid angles of Re(e^{-it} z) - h(t)."""
        proj = (np.exp(-1j * self.thetas)[:, None] * self.points[None, :]).real
        return float(np.max(proj - self.support_values[:, None]))

    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.points)))


def support_values(a, q, thetas, cfg: Optional[AscentConfig] = None) -> np.ndarray:
    a = as_matrix(a)
    qp = as_q(q)
    cfg = cfg or AscentConfig(restarts=BOUNDARY_RESTARTS)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    n = a.shape[0]
    obj.check_admissible(n, qp)
    centers = np.exp(-1j * thetas) * qp.q
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(thetas.shape)
    if n == 1:
        return (centers * a[0, 0]).real
    an = a / scale
    k, r = thetas.size, cfg.restarts

    X = np.tile(start_vectors(n, r, cfg.seed), (k, 1))
    X, vals, _ = ascend(an, X, qp.modulus, qp.p, center=np.repeat(centers, r),
                        max_iters=cfg.max_iters, tol=cfg.tol)
    vals = vals.reshape(k, r)
    pick = np.argmax(vals, axis=1)
    best = vals[np.arange(k), pick]
    best_x = X.reshape(k, r, n)[np.arange(k), pick]

    if k > 2:
        # second pass: seed every angle from its neighbours' maximisers
        seeds = np.concatenate([np.roll(best_x, 1, axis=0), np.roll(best_x, -1, axis=0)])
        cen = np.concatenate([centers, centers])
        seeds, svals, _ = ascend(an, seeds, qp.modulus, qp.p, center=cen,
                                 max_iters=cfg.max_iters, tol=cfg.tol)
        best = np.maximum(best, np.maximum(svals[:k], svals[k:]))
    return best * scale


def support_function(a, q, theta: float, cfg: Optional[AscentConfig] = None) -> float:
    return float(support_values(a, q, [theta], cfg)[0])


def trace_boundary(a, q, grid_size: int = 360, cfg: Optional[AscentConfig] = None) -> BoundaryTrace:
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    thetas = 2 * math.pi * np.arange(grid_size) / grid_size
    h = support_values(a, q, thetas, cfg)
    t1, t2 = thetas, np.roll(thetas, -1)
    h1, h2 = h, np.roll(h, -1)
    # solve x cos t + y sin t = h for consecutive pairs (Cramer's rule)
    det = np.sin(t2 - t1)
    xs = (h1 * np.sin(t2) - h2 * np.sin(t1)) / det
    ys = (h2 * np.cos(t1) - h1 * np.cos(t2)) / det
    return BoundaryTrace(thetas=thetas, support_values=h, points=xs + 1j * ys)
