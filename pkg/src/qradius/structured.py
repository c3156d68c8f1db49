"""Structured block operator matrices and their block-diagonalizing unitaries.

Eight families are supported. Each builds an (n*d)x(n*d) matrix from d-by-d
blocks, and each is unitarily similar to a block-diagonal matrix whose blocks
have a closed form:

===========================  ==========================================  =====
family                       block k                                      k
===========================  ==========================================  =====
tridiagonal                  T + c_k S                                    1..n
alpha_tridiagonal            T + c_k a^(n-1) S                            1..n
omega_tridiagonal            T + c_k S                                    1..n
anti_tridiagonal             (-1)^(k+1) (T + c_k S)                       1..n
circulant                    sum_i w^(k(1-i)) S_i                         0..n-1
skew_circulant               sum_i (s w^k)^(1-i) S_i                      0..n-1
imaginary_circulant          sum_i (a w^k)^(i-1) S_i                      0..n-1
imaginary_skew_circulant     sum_i (b w^k)^(i-1) S_i                      0..n-1
===========================  ==========================================  =====

with c_k = 2 cos(k pi/(n+1)), w = e^(2 pi i/n), s = e^(pi i/n),
a = e^(pi i/2n), b = e^(-pi i/2n).

Layouts. The alpha-tridiagonal matrix carries a^(n-2) S above the diagonal
and a^n S = iS below it; with that sub-diagonal the diagonal phase unitary
diag(a^j) maps it onto the symmetric tridiagonal matrix with coupling
a^(n-1) S, which is what the block formula needs. The imaginary skew
circulant blocks use the exponent (i-1): that is what conjugation by
diag(b^j) F produces, and it reduces at n = 2 to S_1 +- ((1-i)/sqrt 2) S_2.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import MatrixFormatError
from .linalg import as_matrix, assemble_blocks, block_diag, matrix_from_obj, matrix_to_obj

TRIDIAGONAL_FAMILIES = ("tridiagonal", "alpha_tridiagonal", "omega_tridiagonal", "anti_tridiagonal")
CIRCULANT_FAMILIES = ("circulant", "skew_circulant", "imaginary_circulant", "imaginary_skew_circulant")
FAMILIES = TRIDIAGONAL_FAMILIES + CIRCULANT_FAMILIES

# "UMU*" means U M U^H is block diagonal; "U*MU" means U^H M U is.
ORIENTATION = {
    "tridiagonal": "UMU*",
    "anti_tridiagonal": "UMU*",
    "circulant": "UMU*",
    "skew_circulant": "UMU*",
    "alpha_tridiagonal": "U*MU",
    "omega_tridiagonal": "U*MU",
    "imaginary_circulant": "U*MU",
    "imaginary_skew_circulant": "U*MU",
}


@dataclass(frozen=True)
class FamilyConstants:
    n: int
    omega: complex
    sigma: complex
    alpha_circ: complex
    beta: complex
    alpha_tri: complex
    cosines: tuple  # c_k = 2 cos(k pi/(n+1)), k = 1..n

    @classmethod
    def for_n(cls, n: int) -> "FamilyConstants":
        alpha = cmath.exp(1j * math.pi / (2 * n))
        return cls(
            n=n,
            omega=cmath.exp(2j * math.pi / n),
            sigma=cmath.exp(1j * math.pi / n),
            alpha_circ=alpha,
            beta=cmath.exp(-1j * math.pi / (2 * n)),
            alpha_tri=alpha,
            cosines=tuple(2.0 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)),
        )


@dataclass(frozen=True)
class StructuredSpec:
    family: str
    n: int
    blocks: tuple = field(repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise MatrixFormatError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.n, int) or self.n < 2:
            raise MatrixFormatError(f"block count n must be an integer >= 2, got {self.n!r}")
        blocks = tuple(as_matrix(b) for b in self.blocks)
        want = 2 if self.family in TRIDIAGONAL_FAMILIES else self.n
        if len(blocks) != want:
            raise MatrixFormatError(f"{self.family} needs {want} blocks, got {len(blocks)}")
        if len({b.shape for b in blocks}) != 1:
            raise MatrixFormatError("all blocks must share one dimension")
        object.__setattr__(self, "blocks", blocks)

    @property
    def d(self) -> int:
        return self.blocks[0].shape[0]

    @property
    def labels(self) -> list:
        if self.family in TRIDIAGONAL_FAMILIES:
            return list(range(1, self.n + 1))
        return list(range(self.n))

    def to_obj(self) -> dict:
        return {"family": self.family, "n": self.n, "blocks": [matrix_to_obj(b) for b in self.blocks]}

    @classmethod
    def from_obj(cls, obj) -> "StructuredSpec":
        try:
            return cls(obj["family"], obj["n"], tuple(matrix_from_obj(b) for b in obj["blocks"]))
        except (KeyError, TypeError) as exc:
            raise MatrixFormatError(f"bad structured spec: {exc}") from exc


def _tridiagonal_layout(n, diag, sup, sub):
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = diag
        if i + 1 < n:
            grid[i][i + 1] = sup
            grid[i + 1][i] = sub
    return grid


def _circulant_layout(n, blocks, lower_scale):
    grid = [[None] * n for _ in range(n)]
    for j in range(n):
        for m in range(n):
            blk = blocks[(m - j) % n]
            grid[j][m] = blk if m >= j else lower_scale * blk
    return grid


def build_structured(spec: StructuredSpec) -> np.ndarray:
    n, d, fam = spec.n, spec.d, spec.family
    k = FamilyConstants.for_n(n)
    if fam in TRIDIAGONAL_FAMILIES:
        t, s = spec.blocks
        if fam == "tridiagonal":
            grid = _tridiagonal_layout(n, t, s, s)
        elif fam == "alpha_tridiagonal":
            grid = _tridiagonal_layout(n, t, k.alpha_tri ** (n - 2) * s, k.alpha_tri ** n * s)
        elif fam == "omega_tridiagonal":
            grid = _tridiagonal_layout(n, t, k.omega ** (n - 1) * s, k.omega * s)
        else:
            grid = _tridiagonal_layout(n, t, s, s)[::-1]
        return assemble_blocks(grid, d)
    scale = {"circulant": 1.0, "skew_circulant": -1.0,
             "imaginary_circulant": 1j, "imaginary_skew_circulant": -1j}[fam]
    return assemble_blocks(_circulant_layout(n, spec.blocks, scale), d)


def sine_transform(n: int) -> np.ndarray:
    j = np.arange(1, n + 1)
    return math.sqrt(2.0 / (n + 1)) * np.sin(np.outer(j, j) * math.pi / (n + 1))


def fourier_matrix(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.exp(2j * math.pi * np.outer(j, j) / n) / math.sqrt(n)


def _scalar_unitary(family: str, n: int) -> np.ndarray:
    k = FamilyConstants.for_n(n)
    phases = np.arange(n)
    if family in ("tridiagonal", "anti_tridiagonal"):
        return sine_transform(n).astype(np.complex128)
    if family == "alpha_tridiagonal":
        return np.diag(k.alpha_tri ** phases) @ sine_transform(n)
    if family == "omega_tridiagonal":
        return np.diag(k.omega ** phases) @ sine_transform(n)
    if family == "circulant":
        return fourier_matrix(n)
    if family == "skew_circulant":
        return fourier_matrix(n) @ np.diag(k.sigma ** phases)
    if family == "imaginary_circulant":
        return np.diag(k.alpha_circ ** phases) @ fourier_matrix(n)
    if family == "imaginary_skew_circulant":
        return np.diag(k.beta ** phases) @ fourier_matrix(n)
    raise MatrixFormatError(f"unknown family {family!r}")


def reducing_unitary(family: str, n: int, d: int) -> np.ndarray:
    """The (n*d)-square unitary that block-diagonalizes ``family``.

    Use it with the orientation recorded in ``ORIENTATION[family]``.
    """
    if n < 2 or d < 1:
        raise MatrixFormatError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    return np.kron(_scalar_unitary(family, n), np.eye(d))


def reduce_to_blocks(spec: StructuredSpec) -> list:
    n, fam = spec.n, spec.family
    k = FamilyConstants.for_n(n)
    if fam in TRIDIAGONAL_FAMILIES:
        t, s = spec.blocks
        coupling = k.alpha_tri ** (n - 1) if fam == "alpha_tridiagonal" else 1.0
        out = []
        for idx, c in enumerate(k.cosines, start=1):
            blk = t + (c * coupling) * s
            if fam == "anti_tridiagonal":
                blk = (-1) ** (idx + 1) * blk
            out.append(blk)
        return out
    # coefficient of S_i (i = 1..n, r = i - 1) in block k
    if fam == "circulant":
        coef = lambda kk, r: k.omega ** (-kk * r)
    elif fam == "skew_circulant":
        coef = lambda kk, r: (k.sigma * k.omega ** kk) ** (-r)
    elif fam == "imaginary_circulant":
        coef = lambda kk, r: (k.alpha_circ * k.omega ** kk) ** r
    else:
        coef = lambda kk, r: (k.beta * k.omega ** kk) ** r
    return [sum(coef(kk, r) * s for r, s in enumerate(spec.blocks)) for kk in range(n)]


def conjugate(family: str, u: np.ndarray, m: np.ndarray) -> np.ndarray:
    uh = np.conj(u).T
    return u @ m @ uh if ORIENTATION[family] == "UMU*" else uh @ m @ u


def block_diagonalize(spec: StructuredSpec):
    """Return ``(U, blocks, residual)``.

    ``residual`` is the largest entry of the conjugated matrix minus the
    block-diagonal matrix of the closed-form blocks. It is reported, not
    asserted.
    """
    u = reducing_unitary(spec.family, spec.n, spec.d)
    blocks = reduce_to_blocks(spec)
    reduced = conjugate(spec.family, u, build_structured(spec))
    residual = float(np.max(np.abs(reduced - block_diag(blocks))))
    return u, blocks, residual


def make_spec(family: str, n: int, blocks: Sequence) -> StructuredSpec:
    return StructuredSpec(family, n, tuple(blocks))
