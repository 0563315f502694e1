import numpy as np
import pytest

from heisenberg_torus import bundle as bdl
from heisenberg_torus.linalg import max_abs
from heisenberg_torus.modarith import CoprimePair
from heisenberg_torus.nctorus import clock_shift_rep, find_intertwiner
from heisenberg_torus.sections import SectionExpr, rel_residual
from heisenberg_torus.suite import random_atoms

from conftest import basis_for


def canon(r, q, tau=1j):
    return bdl.Bundle.canonical(CoprimePair(r, q), tau)


def test_alpha_value():
    bd = canon(3, 2, 0.5 + 2j)
    assert bd.alpha == pytest.approx(np.pi * (2 / 3) / 2)


def test_multiplier_examples():
    bd = canon(2, 1)
    assert max_abs(bdl.theta_multiplier(bd, (0, 0), 0.3 + 0.2j) - np.eye(2)) < 1e-15
    J = bdl.theta_multiplier(bd, (1, 0), 0.0)
    assert max_abs(J - np.exp(np.pi / 4) * np.diag([1, -1])) < 1e-14


def test_scalar_multiplier_is_classical():
    # r = 1: J_{n + m tau}(z) = e^{alpha (z conj(gamma) + |gamma|^2/2) + i pi q n m}
    q, tau = 3, 0.2 + 1.1j
    bd = canon(1, q, tau)
    for n, m in [(1, 0), (0, 1), (2, -1)]:
        z = 0.3 - 0.1j
        gam = n + m * tau
        ref = np.exp(bd.alpha * (z * np.conj(gam) + abs(gam) ** 2 / 2) + 1j * np.pi * q * n * m)
        assert abs(bdl.theta_multiplier(bd, (n, m), z)[0, 0] - ref) < 1e-12 * abs(ref)


def test_cocycle_examples(rng):
    assert bdl.cocycle_residual(canon(3, 2), (0, 0), (0, 0), 0.3) < 1e-15
    z = complex(*rng.normal(size=2))
    assert bdl.cocycle_residual(canon(3, 2), (1, 0), (0, 1), z) <= 1e-10
    assert bdl.cocycle_residual(canon(2, 1, 1 + 2j), (2, 1), (1, 3), z) <= 1e-9


def test_boundary_examples(rng):
    bd = canon(3, 2)
    z = bdl.random_points(rng, bd.tau, 10)
    assert bdl.boundary_residual(bd, SectionExpr.zero(3), z) == (0.0, 0.0)
    plain = SectionExpr.atom(3, 0, 1.0, mu=0.3)
    assert max(bdl.boundary_residual(bd, plain, z)) > 0.1
    basis = basis_for(3, 2)
    for s in basis.sections:
        assert max(bdl.boundary_residual(bd, s, z)) <= 1e-8


def test_hermitian_pair_properties(rng):
    basis = basis_for(2, 3)
    bd = basis.bundle
    z = bdl.random_points(rng, bd.tau, 10)
    s0, s1 = basis.sections[0], basis.sections[1]
    assert np.all(bdl.hermitian_pair(bd, SectionExpr.zero(2), s1, z) == 0)
    self_pair = bdl.hermitian_pair(bd, s0, s0, z)
    assert np.all(self_pair.real >= 0) and np.max(np.abs(self_pair.imag)) < 1e-15
    base = bdl.hermitian_pair(bd, s0, s1, z)
    for step in (1, bd.tau, -bd.tau + 1):
        assert np.max(np.abs(bdl.hermitian_pair(bd, s0, s1, z + step) - base)) <= 1e-8


def test_l2_inner_convergence():
    basis = basis_for(2, 3)
    bd = basis.bundle
    s0, s1 = basis.sections[0], basis.sections[2]
    assert bdl.l2_inner(bd, s0, s0).real > 0
    assert abs(bdl.l2_inner(bd, s0, s1, 64) - bdl.l2_inner(bd, s0, s1, 128)) <= 1e-10
    G = basis.gram(64)
    assert np.linalg.matrix_rank(G, tol=1e-6 * np.max(np.abs(G))) == 3


def test_ccr_on_atoms(rng):
    for r, q, tau in [(3, 2, 1j), (2, 5, 0.4 + 0.9j), (1, 1, 1 + 2j)]:
        bd = canon(r, q, tau)
        z = bdl.random_points(rng, tau, 50)
        for pz in range(3):
            for pb in range(3):
                s = SectionExpr.atom(r, 0, 1.0, pz=pz, pb=pb, g=0.1, mu=0.2j, nu=-0.3)
                coef, point = bdl.ccr_residual(bd, s, z)
                assert coef <= 1e-12 and point <= 1e-10


def test_Q_zero_and_closure():
    bd = canon(3, 2)
    assert len(bdl.apply_Q(bd, SectionExpr.zero(3))) == 0
    out = bdl.apply_P(bd, SectionExpr.atom(3, 1, 1.0, pb=2))
    assert isinstance(out, SectionExpr)


def test_connection_against_finite_differences(rng):
    bd = canon(2, 3, 0.3 + 1.1j)
    s = random_atoms(rng, 2)
    z = bdl.random_points(rng, bd.tau, 5)
    h = 1e-6
    fdx = (s.evaluate(z + h) - s.evaluate(z - h)) / (2 * h)
    # nabla_x = d/dx - alpha conj(z)
    assert rel_residual(bdl.nabla_x(bd, s).evaluate(z), fdx - bd.alpha * np.conj(z) * s.evaluate(z)) < 1e-7


@pytest.mark.parametrize("r,q,tau", [(2, 3, 1j), (3, 5, 0.3 + 1.2j), (3, 2, 1j)])
def test_hat_relation_and_commutation(rng, r, q, tau):
    bd = canon(r, q, tau)
    s = random_atoms(rng, r)
    z = bdl.random_points(rng, tau, 20)
    th = bd.theta
    uv = bdl.hat_u(bd, bdl.hat_v(bd, s)).evaluate(z)
    vu = bdl.hat_v(bd, bdl.hat_u(bd, s)).evaluate(z)
    assert rel_residual(uv, np.exp(2j * np.pi / th) * vu) <= 1e-10
    for op in (bdl.apply_Q, bdl.apply_P):
        for h in (bdl.hat_u, bdl.hat_v):
            assert rel_residual(op(bd, h(bd, s)).evaluate(z), h(bd, op(bd, s)).evaluate(z)) <= 1e-10


def test_hat_powers_on_sections(rng):
    for r, q in [(2, 3), (3, 2)]:
        basis = basis_for(r, q)
        bd = basis.bundle
        z = bdl.random_points(rng, bd.tau, 10)
        lw = bd.log_sqrt_h(z)
        for s in basis.sections:
            pu, pv = s, s
            for _ in range(q):
                pu, pv = bdl.hat_u(bd, pu), bdl.hat_v(bd, pv)
            assert rel_residual(pu.evaluate(z, lw), bd.rep.a * s.evaluate(z, lw)) <= 1e-10
            assert rel_residual(pv.evaluate(z, lw), bd.rep.b * s.evaluate(z, lw)) <= 1e-10


def test_parallel_transports(rng):
    for r, q, tau in [(2, 3, 1j), (3, 2, 0.5 + 1.5j)]:
        bd = canon(r, q, tau)
        s = random_atoms(rng, r)
        z = bdl.random_points(rng, tau, 20)
        cu, cv = bdl.check_u, bdl.check_v
        assert rel_residual(cv(bd, cu(bd, s)).evaluate(z),
                            np.exp(2j * np.pi * bd.theta) * cu(bd, cv(bd, s)).evaluate(z)) <= 1e-10
        for a in (cu, cv):
            for b in (bdl.hat_u, bdl.hat_v):
                assert rel_residual(a(bd, b(bd, s)).evaluate(z), b(bd, a(bd, s)).evaluate(z)) <= 1e-10
        assert len(cu(bd, SectionExpr.zero(r))) == 0


def test_parallel_transport_solves_transport_equation(rng):
    # d/dt [check_u s](z) along z - 1 + t: check_u s equals s transported by nabla_x
    bd = canon(2, 3)
    s = random_atoms(rng, 2)
    z = bdl.random_points(rng, bd.tau, 5)
    # translation covariance: check_u commutes with nabla_x, and nabla_x kills a flat frame
    lhs = bdl.nabla_x(bd, bdl.check_u(bd, s)).evaluate(z)
    rhs = bdl.check_u(bd, bdl.nabla_x(bd, s)).evaluate(z)
    assert rel_residual(lhs, rhs) < 1e-12


def test_intertwine(rng):
    basis = basis_for(3, 2)
    bd = basis.bundle
    z = bdl.random_points(rng, bd.tau, 10)
    s = basis.sections[0]
    assert rel_residual(bdl.intertwine(np.eye(3), s).evaluate(z), s.evaluate(z)) == 0
    ph = np.exp(0.7j)
    moved = bdl.intertwine(ph * np.eye(3), s)
    assert rel_residual(moved.evaluate(z), ph * s.evaluate(z)) < 1e-15
    assert max(bdl.boundary_residual(bd, moved, z)) <= 1e-8
    # twisted but equivalent representation: W maps sections to sections
    twisted = clock_shift_rep(bd.pair, np.exp(2j * np.pi / 3), 1)
    W = find_intertwiner(bd.rep, twisted)
    bd2 = bdl.Bundle(twisted, bd.tau)
    for s in basis.sections:
        assert max(bdl.boundary_residual(bd2, bdl.intertwine(W, s), z)) <= 1e-8
    with pytest.raises(ValueError):
        bdl.intertwine(2 * np.eye(3), s)


def test_chern_data():
    assert bdl.chern_data(CoprimePair(3, 2)) == {"rank": 3, "degree": 2}
