from __future__ import annotations

import numpy as np

from ..linalg import as_matrix
from .objective import check_admissible
from .params import as_q

CHUNK = 8192


def sample_oracle(a, q, samples: int = 10_000, seed: int = 0) -> float:
    """Monte Carlo lower bound on w_q(A) drawn straight from the definition.

    x is uniform on the sphere, z uniform on the unit sphere of x's
    orthogonal complement, phi uniform; y = conj(q) x + p e^{i phi} z.
    """
    a = as_matrix(a)
    qp = as_q(q)
    n = a.shape[0]
    check_admissible(n, qp)
    rng = np.random.default_rng(seed)
    best = 0.0
    left = samples
    while left > 0:
        k = min(CHUNK, left)
        left -= k
        x = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        x /= np.linalg.norm(x, axis=1)[:, None]
        z = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        phi = rng.uniform(0.0, 2.0 * np.pi, k)
        if n > 1:
            z -= np.einsum("ij,ij->i", z, x.conj())[:, None] * x
            z /= np.linalg.norm(z, axis=1)[:, None]
        else:
            z[:] = 0.0
        y = np.conj(qp.q) * x + qp.p * np.exp(1j * phi)[:, None] * z
        vals = np.abs(np.einsum("ij,ij->i", x @ a.T, y.conj()))
        best = max(best, float(vals.max()))
    return best
