import numpy as np
import pytest

from cyclic_lie import (
    SL2_ALGEBRA,
    LieAlgebra,
    MetricLieAlgebra,
    OmegaMatrix,
    Subspace,
    ValidationError,
    bracket,
    build,
    center,
    change_basis,
    check_anti_derivation,
    check_cyclic,
    check_jacobi,
    derived_ideal,
    killing_form,
    left_null,
    mean_curvature_vector,
    right_null,
    structural_flags,
)
from cyclic_lie.algebra import cyclic_defect

import oracles

SU2 = LieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]})


def sl2(mu=2.0, nu=1.0):
    return MetricLieAlgebra(SL2_ALGEBRA, np.diag([mu + nu, mu, nu]))


def test_structure_must_be_antisymmetric():
    c = np.zeros((2, 2, 2))
    c[0, 1, 1] = 1.0
    with pytest.raises(ValidationError):
        LieAlgebra(c)


def test_from_brackets_rejects_bad_pairs():
    with pytest.raises(ValidationError):
        LieAlgebra.from_brackets(2, {(1, 0): [0, 1]})
    with pytest.raises(ValidationError):
        LieAlgebra.from_brackets(2, {(0, 1): [0, 1, 0]})


def test_gram_must_be_spd():
    with pytest.raises(ValidationError):
        MetricLieAlgebra(LieAlgebra.abelian(2), np.diag([1.0, -1.0]))
    with pytest.raises(ValidationError):
        MetricLieAlgebra(LieAlgebra.abelian(2), np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_bracket_examples():
    assert np.all(bracket(LieAlgebra.abelian(3), [1, 0, 0], [0, 1, 0]) == 0)
    g = build(OmegaMatrix([[1.0]]))
    np.testing.assert_array_equal(bracket(g, [1, 0], [0, 1]), [0, 1])
    np.testing.assert_array_equal(bracket(SL2_ALGEBRA, [0, 1, 0], [0, 0, 1]), [-2, 0, 0])
    with pytest.raises(ValidationError):
        bracket(SL2_ALGEBRA, [1, 0], [0, 1, 0])


def test_jacobi():
    assert check_jacobi(LieAlgebra.abelian(4))
    assert check_jacobi(build(OmegaMatrix(np.eye(2))))
    assert check_jacobi(SL2_ALGEBRA)
    c = SL2_ALGEBRA.structure.copy()
    c[0, 1, 0] += 0.5
    c[1, 0, 0] -= 0.5
    assert not check_jacobi(LieAlgebra(c))


def test_diagonal_rescaling_in_dim_three_keeps_jacobi():
    # [e_i, e_j] in span(e_k) always satisfies Jacobi in dimension 3
    c = SL2_ALGEBRA.structure.copy()
    c[0, 1, 2] += 0.5
    c[1, 0, 2] -= 0.5
    assert check_jacobi(LieAlgebra(c))


def test_cyclic_examples():
    rng = np.random.default_rng(3)
    w = OmegaMatrix(rng.uniform(-2, 2, size=(2, 3)))
    assert check_cyclic(build(w))
    assert not check_cyclic(MetricLieAlgebra(SU2))
    assert check_cyclic(sl2())
    assert check_cyclic(MetricLieAlgebra(LieAlgebra.abelian(3), oracles.random_spd(rng, 3)))


def test_cyclic_defect_matches_brute_force():
    rng = np.random.default_rng(4)
    for _ in range(5):
        g = oracles.random_spd(rng, 3)
        mla = MetricLieAlgebra(SL2_ALGEBRA, g)
        assert np.isclose(np.abs(cyclic_defect(mla)).max(), oracles.brute_cyclic_defect(mla.structure, g))


def test_killing_form():
    assert np.all(killing_form(LieAlgebra.abelian(3)) == 0)
    np.testing.assert_allclose(killing_form(SL2_ALGEBRA), np.diag([-8.0, 8.0, 8.0]))
    rng = np.random.default_rng(5)
    w = OmegaMatrix(rng.uniform(-2, 2, size=(2, 3)))
    c = build(w).structure
    np.testing.assert_allclose(killing_form(build(w)), oracles.brute_killing(c), atol=1e-12)


def test_mean_curvature_vector():
    assert np.all(mean_curvature_vector(MetricLieAlgebra(LieAlgebra.abelian(2))) == 0)
    np.testing.assert_allclose(mean_curvature_vector(build(OmegaMatrix([[1.0, 2.0]]))), [3, 0, 0])
    np.testing.assert_allclose(mean_curvature_vector(sl2()), 0, atol=1e-15)


def test_mean_curvature_vector_defining_property():
    rng = np.random.default_rng(6)
    g = oracles.random_spd(rng, 3)
    mla = MetricLieAlgebra(build(OmegaMatrix([[1.0, -0.5]])).algebra, g)
    h = mean_curvature_vector(mla)
    for u in rng.normal(size=(4, 3)):
        ad_u = np.einsum("i,ijk->kj", u, mla.structure)
        assert np.isclose(u @ g @ h, np.trace(ad_u))


def test_change_basis_roundtrip():
    rng = np.random.default_rng(7)
    mla = MetricLieAlgebra(SL2_ALGEBRA, oracles.random_spd(rng, 3))
    t = rng.normal(size=(3, 3))
    back = change_basis(change_basis(mla, t), np.linalg.inv(t))
    np.testing.assert_allclose(back.structure, mla.structure, atol=1e-10)
    np.testing.assert_allclose(back.gram, mla.gram, atol=1e-10)
    # brackets are carried along
    new = change_basis(mla, t)
    lhs = t @ bracket(new, [1, 0, 0], [0, 1, 0])
    np.testing.assert_allclose(lhs, bracket(mla, t[:, 0], t[:, 1]), atol=1e-10)


def test_subspaces():
    g = np.diag([1.0, 4.0, 9.0])
    s = Subspace.span(np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]]), g)
    assert s.dim == 1
    assert s.contains([2.0, 2.0, 0.0])
    assert not s.contains([1.0, 0.0, 0.0])
    comp = s.complement()
    assert comp.dim == 2
    np.testing.assert_allclose(comp.basis.T @ g @ s.basis, 0, atol=1e-12)
    p = s.projector
    np.testing.assert_allclose(p @ p, p, atol=1e-12)


def test_derived_and_center():
    g = build(OmegaMatrix([[1.0, 2.0]]))
    d = derived_ideal(g)
    assert d.dim == 2 and d.contains([0, 1, 0]) and d.contains([0, 0, 1])
    assert center(g).dim == 0
    prod = MetricLieAlgebra(
        LieAlgebra.from_brackets(3, {(0, 1): [0, 1, 0]})
    )
    assert center(prod).dim == 1 and center(prod).contains([0, 0, 1])
    assert derived_ideal(SL2_ALGEBRA).dim == 3


def test_left_right_null():
    # for G(1,1,(1)): h*h = 0, f*f = h, h*f = 0, f*h = -f
    g = build(OmegaMatrix([[1.0]]))
    ln, rn = left_null(g), right_null(g)
    assert ln.dim == 1 and ln.contains([1, 0])
    assert rn.dim == 0


def test_structural_flags():
    assert all(structural_flags(LieAlgebra.abelian(3)).values())
    f = structural_flags(build(OmegaMatrix([[1.0, 2.0], [0.0, 1.0]])))
    assert f == {"abelian": False, "nilpotent": False, "solvable": True, "two_solvable": True}
    assert not any(structural_flags(SL2_ALGEBRA).values())
    heis = LieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1]})
    f = structural_flags(heis)
    assert f["nilpotent"] and not f["abelian"]


def test_anti_derivation():
    assert check_anti_derivation(LieAlgebra.abelian(3), np.eye(3), np.eye(3))
    delta = np.diag([-3 / 8, 2 / 8, 1 / 8])
    assert check_anti_derivation(SL2_ALGEBRA, killing_form(SL2_ALGEBRA), delta)
    assert not check_anti_derivation(SL2_ALGEBRA, killing_form(SL2_ALGEBRA), np.eye(3))
    with pytest.raises(ValidationError):
        check_anti_derivation(SL2_ALGEBRA, np.zeros((3, 3)), np.eye(3))
