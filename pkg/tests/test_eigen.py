"""Arbitrary-precision cyclic Jacobi eigensolver."""

import random

import gmpy2
import numpy as np
import pytest

from anharm.eigen import (
    JacobiNonConvergence,
    SpectrumReport,
    SymMatrix,
    jacobi_eigen,
    relative_errors,
)
from anharm.mp import to_big, ulp_distance, workprec


def _matrix_from_rows(rows, precision):
    n = len(rows)
    mat = SymMatrix(n, precision)
    with workprec(precision):
        for i in range(n):
            for j in range(i, n):
                mat.set(i, j, to_big(rows[i][j]))
    return mat


def _random_symmetric(n, precision, seed):
    rng = random.Random(seed)
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.uniform(-2, 2)
            rows[i][j] = v
            rows[j][i] = v
    return rows, _matrix_from_rows(rows, precision)


def test_two_by_two_exact():
    mat = _matrix_from_rows([[2, 1], [1, 2]], 128)
    res = jacobi_eigen(mat)
    with workprec(128):
        assert ulp_distance(res.eigenvalues[0], gmpy2.mpfr(1)) <= 2
        assert ulp_distance(res.eigenvalues[1], gmpy2.mpfr(3)) <= 2


def test_diagonal_matrix_is_fixed_point():
    mat = _matrix_from_rows([[3, 0, 0], [0, 1, 0], [0, 0, 2]], 96)
    res = jacobi_eigen(mat)
    assert [float(e) for e in res.eigenvalues] == [1.0, 2.0, 3.0]
    assert res.sweeps <= 1


def test_one_by_one():
    mat = _matrix_from_rows([[7]], 64)
    res = jacobi_eigen(mat)
    assert float(res.eigenvalues[0]) == 7.0


def test_tridiagonal_known_spectrum():
    # second-difference matrix: eigenvalues 2 - 2cos(j pi / 4), j = 1..3
    mat = _matrix_from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], 160)
    res = jacobi_eigen(mat)
    with workprec(160):
        r2 = gmpy2.sqrt(gmpy2.mpfr(2))
        for got, want in zip(res.eigenvalues, (2 - r2, gmpy2.mpfr(2), 2 + r2)):
            assert ulp_distance(got, want) <= 8


def test_trace_preserved():
    rows, mat = _random_symmetric(12, 192, seed=7)
    with workprec(192):
        tr_before = mat.trace()
    res = jacobi_eigen(mat)
    with workprec(192):
        tr_after = gmpy2.mpfr(0)
        for e in res.eigenvalues:
            tr_after += e
        assert ulp_distance(tr_before, tr_after) <= 12 * 4


def test_matches_numpy_at_float64_scale():
    rows, mat = _random_symmetric(15, 128, seed=42)
    res = jacobi_eigen(mat)
    want = np.linalg.eigvalsh(np.array(rows))
    got = np.array([float(e) for e in res.eigenvalues])
    assert np.max(np.abs(got - want)) < 1e-13


def test_eigenvector_orthogonality_and_residual():
    rows, mat = _random_symmetric(10, 128, seed=3)
    res = jacobi_eigen(mat, want_vectors=True)
    # eigenvectors[i] is the vector paired with eigenvalues[i]
    v = np.array([[float(x) for x in row] for row in res.eigenvectors])
    a = np.array(rows)
    lam = np.array([float(e) for e in res.eigenvalues])
    assert np.max(np.abs(v @ v.T - np.eye(10))) < 1e-14
    assert np.max(np.abs(a @ v.T - v.T * lam)) < 1e-12


def test_precision_improves_with_bits():
    rows, _ = _random_symmetric(8, 64, seed=11)
    lo = jacobi_eigen(_matrix_from_rows(rows, 64)).eigenvalues
    hi = jacobi_eigen(_matrix_from_rows(rows, 256)).eigenvalues
    with workprec(256):
        for a, b in zip(lo, hi):
            assert abs(gmpy2.mpfr(a) - b) <= abs(b) * gmpy2.exp2(-52)


def test_nonconvergence_raises():
    _, mat = _random_symmetric(6, 64, seed=1)
    with pytest.raises(JacobiNonConvergence) as exc:
        jacobi_eigen(mat, max_sweeps=0)
    assert exc.value.sweeps == 0


def test_symmatrix_symmetry_and_trace():
    mat = SymMatrix(3, 64)
    with workprec(64):
        mat.set(2, 0, to_big(5))
        assert float(mat.get(0, 2)) == 5.0
        assert float(mat.get(2, 0)) == 5.0
        mat.set(1, 1, to_big(4))
        assert float(mat.trace()) == 4.0


def test_symmatrix_to_numpy_roundtrip():
    rows, mat = _random_symmetric(5, 96, seed=9)
    dense = mat.to_numpy()
    assert np.allclose(dense, np.array(rows))
    assert np.allclose(dense, dense.T)


def test_relative_errors_basic_and_mismatch():
    with workprec(96):
        errs, mismatch = relative_errors([to_big(1.5)], [to_big(1.0)], 96)
        assert not mismatch
        assert float(errs[0]) == 0.5
        errs, mismatch = relative_errors([to_big(1), to_big(2)], [to_big(1)], 96)
        assert mismatch
        assert len(errs) == 1


def test_relative_errors_zero_reference():
    with pytest.raises(ValueError):
        relative_errors([to_big(1)], [to_big(0)], 96)


def test_report_serializes_decimal_strings():
    with workprec(128):
        rep = SpectrumReport(eigenvalues=[to_big("1.25")], meta={"N": 2, "L": to_big(3)})
    d = rep.to_json_dict()
    assert d["eigenvalues"] == ["1.25"]
    assert d["meta"]["N"] == 2
    assert d["meta"]["L"] == "3.0" or d["meta"]["L"].startswith("3")
    assert "relative_errors" not in d


def test_report_roundtrips_full_precision():
    # str(mpfr) must carry enough digits to reparse exactly
    with workprec(256):
        val = gmpy2.sqrt(gmpy2.mpfr(2))
        rep = SpectrumReport(eigenvalues=[val])
        s = rep.to_json_dict()["eigenvalues"][0]
        back = gmpy2.mpfr(s)
        assert back == val
