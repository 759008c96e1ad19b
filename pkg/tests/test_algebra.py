import itertools

import pytest

from ncdeform.algebra import (AdmissibilityError, AlgebraPresentation,
                              opposite, truncate)
from ncdeform.ncpoly import Arrow, NCPoly, Path, Quiver


def test_corpus_dimensions(algebras):
    expected = {"a2": 3, "loop2": 4, "kx2": 2, "kx3": 3, "kx4": 4,
                "kx5": 5, "comm3": 7, "dw": 9}
    for name, alg in algebras.items():
        assert alg.dim == expected[name], name


def test_dw_radical_layers(algebras):
    dw = algebras["dw"]
    assert dw.layer_dims() == [1, 2, 2, 2, 1, 1]
    assert dw.nilpotency() == 6
    assert dw.degree_profile() == [1, 2, 3, 2, 1]
    assert dw.center_dim() == 6


def test_truncation_interacts_with_inhomogeneous_relations():
    # with x^2 = y^3 the degree-3 cut also kills x^2: dim drops to 5
    q = Quiver(1, (Arrow("x", 1, 1), Arrow("y", 1, 1)))
    w = lambda *a: NCPoly.path(q, Path(1, a))
    rels = (w("x", "y") + w("y", "x"), w("x", "x") - w("y", "y", "y"))
    alg = truncate(AlgebraPresentation(q, rels, 3))
    assert alg.dim == 5
    assert all(len(p) < 3 for p in alg.basis)


def test_unit_and_idempotents(algebras):
    for alg in algebras.values():
        one = alg.unit()
        for i in range(alg.dim):
            v = {i: 1}
            assert alg.mul_vec(one, v) == {i: 1}
            assert alg.mul_vec(v, one) == {i: 1}


def test_radical_is_an_ideal_on_basis_products(algebras):
    # a product touching a positive-degree word stays in the radical
    for alg in algebras.values():
        for i in range(alg.dim):
            for j in range(alg.dim):
                if len(alg.basis[i]) + len(alg.basis[j]) == 0:
                    continue
                for k in alg.mul_basis(i, j):
                    assert len(alg.basis[k]) >= 1


def test_layer_dims_sum_to_dim(algebras):
    for alg in algebras.values():
        assert sum(alg.layer_dims()) == alg.dim


def test_opposite_preserves_invariants(presentations):
    for name, pres in presentations.items():
        op = truncate(opposite(pres))
        alg = truncate(pres)
        assert op.dim == alg.dim, name
        assert op.degree_profile() == alg.degree_profile(), name


def test_opposite_is_involutive(presentations):
    pres = presentations["comm3"]
    back = opposite(opposite(pres))
    assert back.quiver == pres.quiver
    assert set(back.relations) == set(pres.relations)


def test_admissibility_rejects_low_degree_terms():
    q = Quiver(1, (Arrow("x", 1, 1),))
    bad = AlgebraPresentation(
        q, (NCPoly.path(q, Path(1, ("x",))),), 5)
    with pytest.raises(AdmissibilityError):
        truncate(bad)


def test_admissibility_rejects_non_parallel_relations():
    q = Quiver(2, (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    bad = AlgebraPresentation(
        q, (NCPoly.path(q, Path(1, ("a", "b"))) +
            NCPoly.path(q, Path(2, ("b", "a"))),), 5)
    with pytest.raises(AdmissibilityError):
        truncate(bad)


def test_default_truncation_cuts_free_growth():
    q = Quiver(1, (Arrow("x", 1, 1),))
    alg = truncate(AlgebraPresentation(q, (), 4))
    assert alg.dim == 4
    assert alg.layer_dims() == [1, 1, 1, 1]
