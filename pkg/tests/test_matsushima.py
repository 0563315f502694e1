import numpy as np
import pytest

from heisenberg_torus import bundle as bdl
from heisenberg_torus import matsushima as ms
from heisenberg_torus.linalg import is_unitary, max_abs
from heisenberg_torus.modarith import CoprimePair, crt_split
from heisenberg_torus.oscillator import create
from heisenberg_torus.sections import SectionExpr
from heisenberg_torus.thetafun import theta_eval

from conftest import basis_for


@pytest.mark.parametrize("r,q,tau", [(2, 3, 1j), (3, 2, 1j), (3, 5, 0.4 + 1.3j), (1, 4, 1j)])
def test_components_are_level_rq_thetas(rng, r, q, tau):
    basis = basis_for(r, q, tau)
    bd = basis.bundle
    z = bdl.random_points(rng, tau, 8)
    for m, s in enumerate(basis.sections):
        vals = s.evaluate(z)
        for j in range(r):
            k = ms.component_theta_index(bd.pair, j, m)
            ref = np.exp(bd.alpha * z * z / 2) * theta_eval(r * q, k, z / r, tau)
            assert np.max(np.abs(vals[j] - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_scalar_case_is_classical(rng):
    q, tau = 4, 0.2 + 1.1j
    basis = basis_for(1, q, tau)
    z = bdl.random_points(rng, tau, 8)
    alpha = basis.bundle.alpha
    for m, s in enumerate(basis.sections):
        ref = np.exp(alpha * z * z / 2) * theta_eval(q, m, z, tau)
        assert np.max(np.abs(s.evaluate(z)[0] - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_section_counts():
    assert len(basis_for(2, 1).sections) == 1
    assert basis_for(2, 1).sections[0].r == 2
    assert max(basis_for(2, 1).boundary) <= 1e-8
    assert len(basis_for(3, 2).sections) == 2
    assert len(basis_for(2, 3).sections) == 3


def test_twisted_basis(rng):
    pair = CoprimePair(3, 2)
    basis = ms.build_vector_thetas(pair, 0.3 + 1.1j, s=np.exp(0.4j), t=np.exp(-1.1j))
    bd = basis.bundle
    z = bdl.random_points(rng, bd.tau, 20)
    for s in basis.sections:
        assert max(bdl.boundary_residual(bd, s, z)) <= 1e-8
    Uh, Vh = ms.hat_matrices(basis)
    I = np.eye(2)
    assert max_abs(np.linalg.matrix_power(Uh, 2) - bd.rep.a * I) <= 1e-6
    assert max_abs(np.linalg.matrix_power(Vh, 2) - bd.rep.b * I) <= 1e-6


def test_holomorphy(rng):
    basis = basis_for(2, 3)
    z = bdl.random_points(rng, basis.tau, 10)
    assert ms.holomorphy_residual(basis, z) == 0
    assert ms.holomorphy_residual([SectionExpr.zero(2)], z) == 0
    lifted = [create(basis.bundle, s) for s in basis.sections]
    assert ms.holomorphy_residual(lifted, z) > 1e-3


@pytest.mark.parametrize("r,q", [(2, 3), (3, 2), (1, 4), (3, 5)])
def test_hat_matrices(r, q):
    basis = basis_for(r, q)
    Uh, Vh = ms.hat_matrices(basis)
    I = np.eye(q)
    assert max_abs(Vh @ Uh - np.exp(2j * np.pi * r / q) * Uh @ Vh) <= 1e-6
    assert max_abs(np.linalg.matrix_power(Uh, q) - I) <= 1e-6
    assert max_abs(np.linalg.matrix_power(Vh, q) - I) <= 1e-6
    # unitary in an orthonormal frame
    G = basis.gram()
    assert is_unitary(ms.orthonormal_action(Uh, G), 1e-8)
    assert is_unitary(ms.orthonormal_action(Vh, G), 1e-8)


def test_hat_matrices_grid_stable():
    basis = basis_for(2, 3)
    a = ms.action_matrix(basis.bundle, basis.sections, bdl.hat_u, 32)[0]
    b = ms.action_matrix(basis.bundle, basis.sections, bdl.hat_u, 64)[0]
    assert max_abs(a - b) < 1e-8


def test_scalar_case_clock_and_shift():
    q = 5
    Uh, Vh = ms.hat_matrices(basis_for(1, q))
    # u^ is diagonal with distinct q-th roots of unity
    assert max_abs(Uh - np.diag(np.diag(Uh))) < 1e-8
    d = np.diag(Uh) / Uh[0, 0]
    assert max_abs(np.sort(np.angle(d) % (2 * np.pi)) - 2 * np.pi * np.arange(q) / q) < 1e-8
    # v^ is a cyclic permutation up to unit phases
    A = np.abs(Vh)
    assert max_abs(A.sum(axis=0) - 1) < 1e-8 and max_abs(A.sum(axis=1) - 1) < 1e-8
    P = (A > 0.5).astype(float)
    assert max_abs(np.linalg.matrix_power(P, q) - np.eye(q)) == 0
    assert all(np.linalg.matrix_power(P, k)[0, 0] == 0 for k in range(1, q))


def test_section_space_iso():
    p = CoprimePair(3, 2)
    iso = ms.section_space_iso(p)
    assert iso[(1, 1)] == 5
    assert sorted(iso.values()) == list(range(6))
    for r in range(1, 11):
        for q in range(1, 11):
            try:
                p = CoprimePair(r, q)
            except ValueError:
                continue
            iso = ms.section_space_iso(p)
            for (m, l), k in iso.items():
                assert crt_split(p, k) == (l, m)
                assert ms.section_space_iso_inverse(p, k) == (m, l)


@pytest.mark.parametrize("r,q,bundles", [
    (3, 2, [[3, 2], [2, 3], [1, 6]]), (1, 1, [[1, 1], [1, 1], [1, 1]]), (5, 7, [[5, 7], [7, 5], [1, 35]]),
])
def test_fmn(r, q, bundles):
    out = ms.fmn_star(CoprimePair(r, q))
    assert out["bundles"] == bundles
    assert out["h0"][0] * out["h0"][1] == out["h0"][2] == r * q
