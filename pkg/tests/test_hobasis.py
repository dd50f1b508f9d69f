"""Harmonic-oscillator basis for the quartic Hamiltonian (1/2)p^2 + (1/2)omega^2 x^2 + lambda x^4."""

import gmpy2
import pytest

from anharm.eigen import jacobi_eigen
from anharm.hobasis import (
    HOBasisSpec,
    assemble_ho,
    box_convention_energy,
    op_frequency,
    pms_frequency,
)
from anharm.mp import root, to_big, ulp_distance, workprec
from anharm.reference import reference_eigenvalue


def test_pms_cubic_closed_cases():
    # omega = 0, lambda = 1, N = 1: Omega^3 = 8(1 + 1/8) = 9
    with workprec(128):
        assert ulp_distance(pms_frequency(0, 1, 1, 128), root(to_big(9), 3)) <= 4


def test_op_cubic_closed_cases():
    # omega = 0, lambda = 1, N = 1: Omega^3 = 8(1 - 1/4) = 6
    with workprec(128):
        assert ulp_distance(op_frequency(0, 1, 1, 128), root(to_big(6), 3)) <= 4


def test_cubic_residual_small():
    for w2 in (0, 1, "2.5", 10):
        for lam in (1, "0.5", 3):
            for n in (1, 4, 16, 64):
                omega = pms_frequency(w2, lam, n, 128)
                with workprec(160):
                    om = gmpy2.mpfr(omega)
                    rhs = 8 * to_big(lam) * (n + gmpy2.mpq(1, 8 * n))
                    res = abs(om**3 - to_big(w2) * om - rhs) / rhs
                    assert res < to_big("1e-30"), (w2, lam, n)


def test_frequency_reduces_to_omega_for_weak_coupling():
    with workprec(128):
        om = pms_frequency(4, "1e-30", 5, 128)
        assert abs(om - 2) < to_big("1e-28")


def test_op_below_pms():
    for n in (1, 2, 8, 32):
        assert op_frequency(0, 1, n, 96) < pms_frequency(0, 1, n, 96)


def test_pms_large_n_scaling():
    # Omega -> 2 (lambda N)^(1/3) for N -> infinity
    for n, lam in ((50, 1), (100, 1), (50, 3)):
        omega = pms_frequency(0, lam, n, 96)
        with workprec(96):
            ratio = omega / (2 * root(to_big(lam) * n, 3))
            assert to_big("0.98") < ratio < to_big("1.02"), (n, lam)


def test_intersection_identity():
    # at the op frequency the physical potential meets the basis potential
    # exactly at the top basis energy: Omega^2 (Omega^2 - omega^2) / (4 lambda)
    # equals Omega (2N - 1/2)
    for w2, lam, n in ((0, 1, 3), (2, 1, 6), (1, "0.5", 10)):
        omega = op_frequency(w2, lam, n, 160)
        with workprec(160):
            om = gmpy2.mpfr(omega)
            lhs = om * om * (om * om - to_big(w2)) / (4 * to_big(lam))
            rhs = om * (2 * n - to_big("0.5"))
            assert abs(lhs - rhs) / rhs < gmpy2.exp2(-140), (w2, lam, n)


def test_assemble_diagonal_when_basis_matches():
    # lambda = 0 and Omega = omega gives the exact oscillator: diagonal
    # matrices with entries Omega (n + 1/2)
    with workprec(128):
        spec = HOBasisSpec(Omega=to_big(2), N=5, omega2=to_big(4), lam=to_big(0))
        even, odd = assemble_ho(spec, 128)
        for j in range(5):
            assert ulp_distance(even.get(j, j), to_big(2) * (2 * j + gmpy2.mpq(1, 2))) <= 4
            assert ulp_distance(odd.get(j, j), to_big(2) * (2 * j + 1 + gmpy2.mpq(1, 2))) <= 4
            if j + 1 < 5:
                assert abs(even.get(j, j + 1)) < gmpy2.exp2(-120)
                assert abs(odd.get(j, j + 1)) < gmpy2.exp2(-120)


def test_detuned_basis_still_finds_harmonic_spectrum():
    # omega^2 = 2, lambda ~ 0: physical levels sqrt(2) (n + 1/2) even with
    # a mismatched basis frequency
    # truncation decays like ((Omega-w)/(Omega+w))^(2N) ~ 1e-17 here
    with workprec(160):
        spec = HOBasisSpec(Omega=to_big(3), N=20, omega2=to_big(2), lam=to_big("1e-50"))
        even, _ = assemble_ho(spec, 160)
        e0 = jacobi_eigen(even).eigenvalues[0]
        assert abs(e0 - gmpy2.sqrt(to_big(2)) / 2) < to_big("1e-15")


def test_pms_near_optimal_among_frequencies():
    # Rayleigh-Ritz: every Omega gives an upper bound on E0; the PMS choice
    # must come close to the best over a wide grid
    n, prec = 6, 128
    omega_pms = pms_frequency(0, 1, n, prec)

    def ground(omega):
        spec = HOBasisSpec(Omega=omega, N=n, omega2=to_big(0), lam=to_big(1))
        even, _ = assemble_ho(spec, prec)
        return jacobi_eigen(even).eigenvalues[0]

    with workprec(prec):
        e_pms = ground(omega_pms)
        grid = [ground(omega_pms * to_big(f"{x:.2f}")) for x in
                (0.6, 0.75, 0.9, 1.1, 1.25, 1.5)]
        best = min(grid)
        assert e_pms <= best + abs(best) * to_big("1e-4")


def test_pms_flat_to_first_order():
    # stationarity: a 1 percent frequency shift moves E0 far less than
    # linearly (quadratic response at the optimum)
    n, prec = 8, 192
    omega_pms = pms_frequency(0, 1, n, prec)

    def ground(omega):
        spec = HOBasisSpec(Omega=omega, N=n, omega2=to_big(0), lam=to_big(1))
        even, _ = assemble_ho(spec, prec)
        return jacobi_eigen(even).eigenvalues[0]

    with workprec(prec):
        e0 = ground(omega_pms)
        up = ground(omega_pms * to_big("1.01"))
        dn = ground(omega_pms * to_big("0.99"))
        sym = abs(up + dn - 2 * e0) / 2  # quadratic part
        anti = abs(up - dn) / 2          # linear part, should be subdominant
        assert anti < sym * 10
        assert abs(up - e0) / e0 < to_big("1e-4")


def test_box_convention_map_quartic():
    # 2 E (2 lambda)^(-1/3) turns (1/2)p^2 + lambda x^4 eigenvalues into
    # those of -d^2 + x^4
    omega = pms_frequency(0, 1, 25, 256)
    with workprec(256):
        spec = HOBasisSpec(Omega=omega, N=25, omega2=to_big(0), lam=to_big(1))
        even, _ = assemble_ho(spec, 256)
        e0 = jacobi_eigen(even).eigenvalues[0]
        boxed = box_convention_energy(e0, 1, 256)
        ref = reference_eigenvalue("x^4", "even", 0, 256)
        assert abs(boxed - ref) / ref < to_big("1e-12")


def test_box_convention_scaling_consistency():
    # the map must be the identity composed with the exact power law:
    # lambda = 1/2 gives plain doubling
    with workprec(96):
        assert ulp_distance(box_convention_energy(to_big(3), "0.5", 96), to_big(6)) <= 4


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        pms_frequency(0, 1, 0, 64)
    with pytest.raises(ValueError):
        pms_frequency(0, 0, 5, 64)  # rhs must be positive
    with pytest.raises(ValueError):
        HOBasisSpec(Omega=1, N=0, omega2=0, lam=1)
    with workprec(64):
        spec = HOBasisSpec(Omega=to_big(-1), N=2, omega2=to_big(0), lam=to_big(1))
        with pytest.raises(ValueError):
            assemble_ho(spec, 64)
