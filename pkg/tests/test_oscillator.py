import numpy as np
import pytest

from heisenberg_torus import bundle as bdl
from heisenberg_torus import oscillator as osc
from heisenberg_torus.sections import SectionExpr, rel_residual
from heisenberg_torus.suite import random_atoms

from conftest import basis_for


def test_annihilate_kills_holomorphic():
    basis = basis_for(2, 3)
    for s in basis.sections:
        assert len(osc.annihilate(basis.bundle, s).simplify()) == 0
    assert len(osc.annihilate(basis.bundle, SectionExpr.zero(2))) == 0
    assert len(osc.create(basis.bundle, SectionExpr.zero(2))) == 0


def test_commutator_exact_on_atoms(rng):
    bd = bdl.Bundle.canonical(basis_for(2, 3).pair, 0.4 + 1.3j)
    assert osc.commutator_constant(bd) == pytest.approx(np.pi * 1.5 / 1.3)
    for p in range(6):
        s = SectionExpr.atom(2, 1, 1.0, pz=p, pb=p, g=0.2, mu=0.3j, nu=-0.1)
        assert osc.commutator_residual(bd, s) <= 1e-12
    assert osc.commutator_residual(bd, random_atoms(rng, 2, max_power=5)) <= 1e-12


def test_adjointness_fixes_constant():
    basis = basis_for(2, 3)
    bd = basis.bundle
    for s in basis.sections:
        for s2 in basis.sections:
            lhs = bdl.l2_inner(bd, osc.create(bd, s), osc.create(bd, s2))
            rhs = bd.alpha * bdl.l2_inner(bd, s, s2)
            assert abs(lhs - rhs) <= 1e-8 * max(1, abs(rhs))


def test_adjointness_one_step():
    # <A^dagger s, t> = <s, A t> with s in level 0 and t in level 1
    basis = basis_for(3, 2)
    bd = basis.bundle
    s = basis.sections[0]
    t = osc.create(bd, basis.sections[1]) + basis.sections[0].scale(0.3)
    lhs = bdl.l2_inner(bd, osc.create(bd, s), t)
    rhs = bdl.l2_inner(bd, s, osc.annihilate(bd, t))
    assert abs(lhs - rhs) <= 1e-8 * max(1, abs(rhs))


def test_create_preserves_sections(rng):
    basis = basis_for(3, 2)
    bd = basis.bundle
    z = bdl.random_points(rng, bd.tau, 20)
    for s in basis.sections:
        assert max(bdl.boundary_residual(bd, osc.create(bd, s), z)) <= 1e-8


def test_level_zero():
    basis = basis_for(2, 3)
    lvl = osc.landau_level(basis, 0)
    assert lvl.rank == 3 and lvl.eigenvalue == 0
    assert osc.level_preservation(lvl) <= 1e-6


def test_level_one():
    basis = basis_for(2, 3)
    lvl = osc.landau_level(basis, 1)
    assert lvl.rank == 3
    assert lvl.eigenvalue == pytest.approx(basis.bundle.alpha)
    assert lvl.eigen_residual <= 1e-8
    assert osc.level_preservation(lvl) <= 1e-6
    lvl0 = osc.landau_level(basis, 0)
    bd = basis.bundle
    for a in lvl0.basis:
        for b in lvl.basis:
            assert abs(bdl.l2_inner(bd, a, b)) <= 1e-8


def test_level_matrices_match_holomorphic_action():
    # A^dagger commutes with u^, v^, so the level-1 matrices equal the level-0 ones
    basis = basis_for(2, 3)
    U0, V0 = osc.level_matrices(osc.landau_level(basis, 0))
    U1, V1 = osc.level_matrices(osc.landau_level(basis, 1))
    assert np.max(np.abs(U0 - U1)) < 1e-8 and np.max(np.abs(V0 - V1)) < 1e-8


def test_level_bounds():
    with pytest.raises(ValueError):
        osc.landau_level(basis_for(2, 3), osc.MAX_LEVEL + 1)


def test_eigen_residual_detects_wrong_value(rng):
    basis = basis_for(2, 3)
    bd = basis.bundle
    z = bdl.random_points(rng, bd.tau, 5)
    s = osc.create(bd, basis.sections[0])
    assert osc.eigen_residual(bd, s, bd.alpha, z) <= 1e-10
    assert osc.eigen_residual(bd, s, 1.1 * bd.alpha, z) > 1e-3
