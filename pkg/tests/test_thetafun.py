import cmath

import mpmath
import numpy as np
import pytest

from heisenberg_torus.thetafun import (
    auto_trunc, check_tau, cst_modes, heat_residual, theta_eval, theta_modes,
)

REF = 1.08643481121330803


def mp_theta(level, index, z, tau, N=60):
    mpmath.mp.dps = 40
    z, tau = mpmath.mpc(z), mpmath.mpc(tau)
    return complex(mpmath.fsum(
        mpmath.exp(1j * mpmath.pi * tau * lam ** 2 / level + 2j * mpmath.pi * lam * z)
        for lam in (index + level * n for n in range(-N, N + 1))))


def test_reference_value():
    assert abs(theta_eval(1, 0, 0, 1j) - REF) < 1e-10
    mpmath.mp.dps = 30
    closed = mpmath.pi ** 0.25 / mpmath.gamma(0.75)
    assert abs(theta_eval(1, 0, 0, 1j) - float(closed)) < 1e-14


def test_against_jacobi_theta3():
    # level 1 theta is Jacobi theta_3(pi z | q = e^{i pi tau})
    for z, tau in [(0.3 + 0.1j, 1j), (0.1, 0.5 + 1.2j), (0.7 - 0.4j, 2j)]:
        ref = complex(mpmath.jtheta(3, mpmath.pi * z, mpmath.exp(1j * mpmath.pi * tau)))
        assert abs(theta_eval(1, 0, z, tau) - ref) < 1e-12 * max(1, abs(ref))


def test_against_high_precision_sum():
    for level, index, z, tau in [(2, 1, 0, 2j), (3, 2, 0.2 + 0.3j, 1 + 1.5j), (6, 5, -0.4j, 0.3 + 1j)]:
        ref = mp_theta(level, index, z, tau)
        assert abs(theta_eval(level, index, z, tau) - ref) < 1e-12 * max(1, abs(ref))


def test_integer_periodicity():
    assert abs(theta_eval(1, 0, 1, 1j) - theta_eval(1, 0, 0, 1j)) < 1e-14
    for k, l in [(2, 1), (5, 3)]:
        z = 0.17 + 0.2j
        assert abs(theta_eval(k, l, z + 1, 1.5j) - theta_eval(k, l, z, 1.5j)) < 1e-12


def test_truncations_agree():
    v1 = theta_eval(2, 1, 0, 2j, trunc=8)
    v2 = theta_eval(2, 1, 0, 2j, trunc=16)
    assert abs(v1 - v2) < 1e-14
    direct = sum(np.exp(-2 * np.pi * (1 + 2 * n) ** 2 / 2) for n in range(-20, 21))
    assert abs(v2 - direct) < 1e-14


def test_array_input():
    z = np.array([[0, 0.1], [0.2j, 0.3 + 0.1j]])
    vals = theta_eval(3, 1, z, 1j)
    assert vals.shape == z.shape
    assert abs(vals[1, 1] - theta_eval(3, 1, z[1, 1], 1j)) < 1e-15


def test_auto_trunc():
    assert auto_trunc(1, 0, 0, 1j, 1e-16) <= 6
    for tau in (0.5j, 1j, 1 + 2j):
        assert auto_trunc(2, 1, 0.3j, 2 * tau) <= auto_trunc(2, 1, 0.3j, tau)
        assert auto_trunc(2, 1, 0.3j, tau, 1e-4) <= auto_trunc(2, 1, 0.3j, tau, 1e-16)


def test_modes_and_coefficients():
    modes = theta_modes(3, 2, 2)
    assert list(modes) == [2 + 3 * n for n in range(-2, 3)]
    tau = 0.4 + 1.1j
    coeffs = cst_modes([0, 2, -2, 5], 3, tau)
    assert coeffs[0] == 1
    assert abs(coeffs[2] - coeffs[-2]) == 0
    assert abs(coeffs[5] - cmath.exp(1j * cmath.pi * tau * 25 / 3)) < 1e-15


def test_heat_equation():
    assert heat_residual(1, 0, 0.3 + 0.1j, 1j, 1e-3) <= 1e-4
    rng = np.random.default_rng(3)
    z = complex(rng.uniform(), rng.uniform(0, 0.5))
    assert heat_residual(3, 2, z, 2j, 1e-3) <= 1e-3
    ratio = heat_residual(1, 0, 0.3 + 0.1j, 1j, 1e-3) / heat_residual(1, 0, 0.3 + 0.1j, 1j, 5e-4)
    assert 3.2 <= ratio <= 4.8


def test_invalid_inputs():
    with pytest.raises(ValueError):
        check_tau(-1j)
    with pytest.raises(ValueError):
        theta_eval(0, 0, 0, 1j)
    with pytest.raises(ValueError):
        theta_eval(2, 2, 0, 1j)
    with pytest.raises(ValueError):
        heat_residual(1, 0, 0, 1e-4j, 1e-3)
