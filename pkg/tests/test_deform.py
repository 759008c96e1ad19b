import pytest

from ncdeform.deform import (NotSimpleCollection, ParameterAlgebra,
                             check_simple_collection, deform_versal,
                             extract_presentation,
                             iterated_extension_dim_audit, recovery_check)
from ncdeform.algebra import truncate
from ncdeform.repmod import projectives, simples


def test_simples_form_a_simple_collection(algebras):
    for alg in algebras.values():
        coll = check_simple_collection(simples(alg))
        assert coll.r == alg.quiver.vertex_count


def test_a_projective_with_endomorphisms_is_rejected(algebras):
    alg = algebras["kx3"]
    with pytest.raises(NotSimpleCollection):
        check_simple_collection(projectives(alg))


def test_kx3_versal_run(algebras):
    coll = check_simple_collection(simples(algebras["kx3"]))
    state, pa, converged = deform_versal(coll, 10)
    assert converged
    assert state.stage == 2
    assert pa.dim == 3
    assert pa.layer_dims() == [1, 1, 1]
    assert iterated_extension_dim_audit(state, pa)
    assert state.audit_flatness()


def test_a2_versal_run(algebras):
    coll = check_simple_collection(simples(algebras["a2"]))
    state, pa, converged = deform_versal(coll, 10)
    assert converged
    assert state.stage == 1
    assert pa.dim == 3
    assert pa.layer_dims() == [2, 1]


def test_stage_zero_parameter_algebra_is_the_base(algebras):
    coll = check_simple_collection(simples(algebras["dw"]))
    state, pa, converged = deform_versal(coll, 0)
    assert not converged
    assert state.stage == 0
    assert pa.dim == coll.r


def test_partial_stages_still_satisfy_the_audit(algebras):
    coll = check_simple_collection(simples(algebras["kx5"]))
    for cap in range(5):
        state, pa, _ = deform_versal(coll, cap)
        assert iterated_extension_dim_audit(state, pa)


def test_parameter_algebra_augmentation_is_multiplicative(algebras):
    coll = check_simple_collection(simples(algebras["loop2"]))
    state, pa, _ = deform_versal(coll, 10)
    # aug(u * v)_i = sum_j aug(u)_{?} ... for diagonal idempotent classes
    # spot-check: the identity decomposes into the r idempotents with
    # augmentation the standard basis vectors
    for i, e in enumerate(pa.idempotents):
        sq = pa.mul_vec(e, e)
        assert sq == e
        vec = [0] * pa.r
        vec[i] = 1
        agg = [0] * pa.r
        for b, c in e.items():
            for k in range(pa.r):
                agg[k] += c * pa.augmentation[b][k]
        assert agg == vec


def test_extracted_presentation_of_kx3(algebras):
    coll = check_simple_collection(simples(algebras["kx3"]))
    _, pa, _ = deform_versal(coll, 10)
    pres = extract_presentation(pa)
    assert pres.quiver.vertex_count == 1
    assert len(pres.quiver.arrows) == 1
    (rel,) = pres.relations
    assert rel.degree() == 3
    assert truncate(pres).layer_dims() == [1, 1, 1]


def test_extracted_presentation_of_a2(algebras):
    coll = check_simple_collection(simples(algebras["a2"]))
    _, pa, _ = deform_versal(coll, 10)
    pres = extract_presentation(pa)
    assert pres.quiver.vertex_count == 2
    assert len(pres.quiver.arrows) == 1
    assert pres.relations == ()


def test_recovery_on_the_corpus_spot_checks(algebras):
    for name in ("a2", "loop2", "kx2", "comm3"):
        report = recovery_check(algebras[name])
        assert report.passed, (name, report.lines())
