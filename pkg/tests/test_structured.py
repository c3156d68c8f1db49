import math
import zlib

import numpy as np
import pytest

from qradius.errors import MatrixFormatError
from qradius.linalg import random_matrix, unitarity_defect
from qradius.structured import (CIRCULANT_FAMILIES, FAMILIES, TRIDIAGONAL_FAMILIES, FamilyConstants,
                                StructuredSpec, block_diagonalize, build_structured, make_spec,
                                reduce_to_blocks, reducing_unitary)

R2 = 1 / math.sqrt(2)


def blocks_for(family, n, d, rng):
    count = 2 if family in TRIDIAGONAL_FAMILIES else n
    return [random_matrix(rng, d) for _ in range(count)]


@pytest.mark.parametrize("n", range(2, 9))
def test_family_constants(n):
    k = FamilyConstants.for_n(n)
    assert abs(k.omega ** n - 1) < 1e-12
    assert abs(k.sigma ** n + 1) < 1e-12
    assert abs(k.alpha_circ ** n - 1j) < 1e-12
    assert abs(k.beta ** n + 1j) < 1e-12
    assert abs(k.alpha_tri ** n - 1j) < 1e-12
    assert k.cosines == pytest.approx([2 * math.cos(j * math.pi / (n + 1)) for j in range(1, n + 1)])


def test_build_circulant_pair(rng):
    t, s = random_matrix(rng, 2), random_matrix(rng, 2)
    m = build_structured(make_spec("circulant", 2, [t, s]))
    assert np.array_equal(m, np.block([[t, s], [s, t]]))


def test_build_skew_pair(rng):
    t, s = random_matrix(rng, 2), random_matrix(rng, 2)
    m = build_structured(make_spec("skew_circulant", 2, [t, s]))
    assert np.array_equal(m, np.block([[t, s], [-s, t]]))


def test_build_imaginary_pairs(rng):
    t, s = random_matrix(rng, 2), random_matrix(rng, 2)
    assert np.array_equal(build_structured(make_spec("imaginary_circulant", 2, [t, s])),
                          np.block([[t, s], [1j * s, t]]))
    assert np.array_equal(build_structured(make_spec("imaginary_skew_circulant", 2, [t, s])),
                          np.block([[t, s], [-1j * s, t]]))


def test_build_tridiagonal_example():
    m = build_structured(make_spec("tridiagonal", 3, [[[2]], [[1]]]))
    assert np.array_equal(m, [[2, 1, 0], [1, 2, 1], [0, 1, 2]])


def test_build_circulant_rows_are_cyclic_shifts():
    m = build_structured(make_spec("circulant", 4, [[[1]], [[2]], [[3]], [[4]]]))
    assert np.array_equal(m.real, [[1, 2, 3, 4], [4, 1, 2, 3], [3, 4, 1, 2], [2, 3, 4, 1]])


def test_build_anti_tridiagonal_layout():
    m = build_structured(make_spec("anti_tridiagonal", 3, [[[5]], [[1]]]))
    assert np.array_equal(m.real, [[0, 1, 5], [1, 5, 1], [5, 1, 0]])


def test_build_omega_tridiagonal_layout():
    n = 4
    w = FamilyConstants.for_n(n).omega
    m = build_structured(make_spec("omega_tridiagonal", n, [[[0]], [[1]]]))
    for i in range(n - 1):
        assert m[i, i + 1] == pytest.approx(w ** (n - 1))
        assert m[i + 1, i] == pytest.approx(w)


def test_reducing_unitary_examples():
    h = reducing_unitary("tridiagonal", 2, 1)
    assert np.allclose(h, np.array([[1, 1], [1, -1]]) * R2, atol=1e-15)
    assert unitarity_defect(reducing_unitary("circulant", 4, 1)) < 1e-12
    u = reducing_unitary("skew_circulant", 2, 1)
    assert unitarity_defect(u) < 1e-12


def test_reduce_examples(rng):
    t, s = random_matrix(rng, 2), random_matrix(rng, 2)
    c = reduce_to_blocks(make_spec("circulant", 2, [t, s]))
    assert np.allclose(c[0], t + s) and np.allclose(c[1], t - s)
    sk = reduce_to_blocks(make_spec("skew_circulant", 2, [t, s]))
    assert np.allclose(sk[0], t - 1j * s) and np.allclose(sk[1], t + 1j * s)
    im = reduce_to_blocks(make_spec("imaginary_circulant", 2, [t, s]))
    z = (1 + 1j) * R2
    assert np.allclose(im[0], t + z * s) and np.allclose(im[1], t - z * s)
    ims = reduce_to_blocks(make_spec("imaginary_skew_circulant", 2, [t, s]))
    z = (1 - 1j) * R2
    assert {tuple(np.round(b, 12).ravel()) for b in ims} == \
        {tuple(np.round(t + z * s, 12).ravel()), tuple(np.round(t - z * s, 12).ravel())}
    tri = reduce_to_blocks(make_spec("tridiagonal", 3, [t, s]))
    for blk, c3 in zip(tri, (math.sqrt(2), 0.0, -math.sqrt(2))):
        assert np.allclose(blk, t + c3 * s, atol=1e-14)


def test_block_diagonalize_examples(rng):
    tv, sv = 0.7 - 0.2j, 1.3 + 0.4j
    _, blocks, res = block_diagonalize(make_spec("anti_tridiagonal", 2, [[[tv]], [[sv]]]))
    assert res < 1e-12
    assert blocks[0][0, 0] == pytest.approx(tv + sv) and blocks[1][0, 0] == pytest.approx(sv - tv)
    _, _, res = block_diagonalize(make_spec("circulant", 3, blocks_for("circulant", 3, 2, rng)))
    assert res < 1e-10
    _, blocks, res = block_diagonalize(make_spec("tridiagonal", 3, [[[2]], [[1]]]))
    assert res < 1e-12
    assert [b[0, 0].real for b in blocks] == pytest.approx([2 + math.sqrt(2), 2, 2 - math.sqrt(2)])


@pytest.mark.parametrize("family", FAMILIES)
def test_reduction_grid(family):
    rng = np.random.default_rng(zlib.crc32(family.encode()))
    for n in range(2, 7):
        for d in (1, 2, 3):
            assert unitarity_defect(reducing_unitary(family, n, d)) < 1e-10
            _, blocks, res = block_diagonalize(make_spec(family, n, blocks_for(family, n, d, rng)))
            assert res < 1e-9, (family, n, d, res)
            assert len(blocks) == n


@pytest.mark.parametrize("n", range(2, 7))
def test_circulant_equal_blocks(n, rng):
    s = random_matrix(rng, 2)
    blocks = reduce_to_blocks(make_spec("circulant", n, [s] * n))
    assert np.max(np.abs(blocks[0] - n * s)) < 1e-12
    for b in blocks[1:]:
        assert np.max(np.abs(b)) < 1e-12


@pytest.mark.parametrize("n", range(2, 7))
def test_skew_matches_phase_scaled_circulant(n, rng):
    ss = [random_matrix(rng, 2) for _ in range(n)]
    sigma = FamilyConstants.for_n(n).sigma
    scaled = [sigma ** (-i) * s for i, s in enumerate(ss)]
    skew = reduce_to_blocks(make_spec("skew_circulant", n, ss))
    circ = reduce_to_blocks(make_spec("circulant", n, scaled))
    for a, b in zip(skew, circ):
        assert np.max(np.abs(a - b)) < 1e-12


@pytest.mark.parametrize("n", range(2, 7))
def test_anti_is_signed_tridiagonal(n, rng):
    t, s = random_matrix(rng, 2), random_matrix(rng, 2)
    tri = reduce_to_blocks(make_spec("tridiagonal", n, [t, s]))
    anti = reduce_to_blocks(make_spec("anti_tridiagonal", n, [t, s]))
    for k, (a, b) in enumerate(zip(anti, tri), start=1):
        assert np.array_equal(a, (-1) ** (k + 1) * b)


def test_labels():
    assert make_spec("tridiagonal", 3, [[[1]], [[1]]]).labels == [1, 2, 3]
    assert make_spec("circulant", 3, [[[1]]] * 3).labels == [0, 1, 2]


@pytest.mark.parametrize("family,n,count", [("circulant", 3, 2), ("tridiagonal", 3, 3), ("bogus", 2, 2),
                                            ("circulant", 1, 1)])
def test_invalid_specs(family, n, count):
    with pytest.raises(MatrixFormatError):
        make_spec(family, n, [[[1]]] * count)


def test_ragged_blocks_rejected():
    with pytest.raises(MatrixFormatError):
        make_spec("tridiagonal", 2, [np.eye(2), np.eye(3)])


def test_spec_json_roundtrip(rng):
    spec = make_spec("imaginary_circulant", 3, blocks_for("imaginary_circulant", 3, 2, rng))
    back = StructuredSpec.from_obj(spec.to_obj())
    assert back.family == spec.family and back.n == spec.n
    for a, b in zip(back.blocks, spec.blocks):
        assert np.array_equal(a, b)
    with pytest.raises(MatrixFormatError):
        StructuredSpec.from_obj({"family": "circulant"})


def test_circulant_families_listed():
    assert set(CIRCULANT_FAMILIES) | set(TRIDIAGONAL_FAMILIES) == set(FAMILIES)
