"""Acceptance suite: one test per criterion, each printing a single
pass/fail line under `pytest -v`.

Criterion list:
  1. the (xy+yx, x^2-y^3) algebra is finite dimensional of dimension 9,
     cross-checked against an independent brute-force counter, in < 1 s;
  2. simples/projectives structure on a corpus of 8 algebras in < 10 s;
  3. recovery of every corpus algebra from its simple collection;
  4. the dim R = r + N audit, including randomized partial runs;
  5. contraction vs deformation cross-checks;
  6. opposite symmetry of contraction algebras;
  7. structural properties (associativity, normal forms, extensions,
     growth stability);
  8. byte-identical reports across repeated runs.
"""

import io
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction

from conftest import CORPUS, corpus_path, corpus_text

from ncdeform.algebra import truncate
from ncdeform.cli import parse_algebra, run_command
from ncdeform.contract import (ContractionSpec, contraction_finiteness,
                               contraction_vs_deformation,
                               opposite_symmetry_check)
from ncdeform.deform import (check_simple_collection, deform_versal,
                             iterated_extension_dim_audit, recovery_check)
from ncdeform.linalg import Subspace
from ncdeform.ncpoly import Path, complete_rewrite_system, growth_report, \
    multiply, normal_form
from ncdeform.repmod import (ext1, hom, is_split, projectives,
                             realize_extension, simples)


def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run_command(argv)
    return code, buf.getvalue()


def _free_paths_below(quiver, bound):
    """All paths of degree < bound, by brute-force concatenation."""
    levels = [[Path(v) for v in range(1, quiver.vertex_count + 1)]]
    for _ in range(1, bound):
        nxt = []
        for p in levels[-1]:
            for a in quiver.arrows:
                if a.source == p.end(quiver):
                    nxt.append(Path(p.start, p.arrows + (a.name,)))
        levels.append(nxt)
    return [p for lvl in levels for p in lvl]


def _brute_force_quotient_dim(pres, bound):
    """dim A/(I + J^bound), counted without any rewriting machinery: the
    span of the low-degree parts of all products a*r*b is subtracted from
    the span of all paths of degree < bound."""
    quiver = pres.quiver
    paths = _free_paths_below(quiver, bound)
    index = {p: k for k, p in enumerate(paths)}
    span = Subspace(len(paths))
    factors = _free_paths_below(quiver, bound - 1)
    for rel in pres.relations:
        for a in factors:
            for b in factors:
                vec = [Fraction(0)] * len(paths)
                hit = False
                for p, c in rel.terms:
                    if a.end(quiver) != p.start or \
                            p.end(quiver) != b.start:
                        continue
                    w = Path(a.start, a.arrows + p.arrows + b.arrows)
                    if len(w) < bound:
                        vec[index[w]] += c
                        hit = True
                if hit:
                    span.add(vec)
    return len(paths) - span.dim


def test_criterion_1_dw_finite_dimension_nine():
    pres = parse_algebra(corpus_text("dw"))
    start = time.perf_counter()
    gr = contraction_finiteness(ContractionSpec(pres, frozenset()), 12)
    elapsed = time.perf_counter() - start
    assert (gr.kind, gr.dim) == ("finite", 9)
    assert elapsed < 1.0, f"findim took {elapsed:.2f}s"
    # independent oracle: dim A/(I + J^m) stabilizes at 9
    assert _brute_force_quotient_dim(pres, 6) == 9
    assert _brute_force_quotient_dim(pres, 7) == 9
    code, out = _cli(["findim", corpus_path("dw"), "--bound", "8"])
    assert code == 0 and "result=finite dim=9" in out


def test_criterion_2_simples_projectives_structure():
    start = time.perf_counter()
    for name in CORPUS:
        alg = truncate(parse_algebra(corpus_text(name)))
        S, P = simples(alg), projectives(alg)
        n = alg.quiver.vertex_count
        assert len(S) == n and len(P) == n, name
        for i, p in enumerate(P):
            for j, s in enumerate(S):
                assert hom(p, s).dim == (1 if i == j else 0), name
    assert time.perf_counter() - start < 10.0


def test_criterion_3_recovery_on_every_corpus_algebra(algebras):
    for name, alg in algebras.items():
        report = recovery_check(alg)
        assert report.passed, (name, report.lines())
    coll = check_simple_collection(simples(algebras["kx3"]))
    state, pa, converged = deform_versal(coll, 50)
    assert (converged, state.stage, pa.dim) == (True, 2, 3)
    coll = check_simple_collection(simples(algebras["a2"]))
    state, pa, converged = deform_versal(coll, 50)
    assert (converged, state.stage, pa.dim) == (True, 1, 3)


def test_criterion_4_dim_r_plus_n_audit(algebras):
    for name, alg in algebras.items():
        coll = check_simple_collection(simples(alg))
        state, pa, _ = deform_versal(coll, 50)
        assert iterated_extension_dim_audit(state, pa), name
    rng = random.Random(20260824)
    names = [n for n in CORPUS if n != "dw"]
    for _ in range(100):
        name = rng.choice(names)
        alg = algebras[name]
        S = simples(alg)
        verts = sorted(rng.sample(range(len(S)),
                                  rng.randint(1, len(S))))
        coll = check_simple_collection([S[v] for v in verts])
        state, pa, _ = deform_versal(coll, rng.randint(0, 3))
        assert iterated_extension_dim_audit(state, pa), (name, verts)


def test_criterion_5_contraction_cross_check(presentations):
    for name, v0 in (("a2", {2}), ("loop2", {2})):
        spec = ContractionSpec(presentations[name], frozenset(v0))
        report = contraction_vs_deformation(spec, 20)
        assert report.passed, (name, report.lines())
    for name, pres in presentations.items():
        spec = ContractionSpec(pres, frozenset())
        report = contraction_vs_deformation(spec, 20)
        assert report.passed, (name, report.lines())
    code, out = _cli(["contract", corpus_path("a2"), "--vertices", "2",
                      "--compare-deform"])
    assert code == 0 and "check.dim=pass" in out


def test_criterion_6_opposite_symmetry(presentations):
    for name, pres in presentations.items():
        report = opposite_symmetry_check(ContractionSpec(pres, frozenset()))
        assert report.passed, (name, report.lines())
    code, out = _cli(["contract", corpus_path("dw"), "--vertices", "",
                      "--check-opposite"])
    assert code == 0 and "check.degree_profile=pass" in out


def test_criterion_7_property_suite(presentations, algebras):
    # associativity of every multiplication table on all basis triples
    for name, alg in algebras.items():
        n = alg.dim
        for i in range(n):
            for j in range(n):
                ij = alg.mul_basis(i, j)
                for k in range(n):
                    left = alg.mul_vec(ij, {k: Fraction(1)})
                    right = alg.mul_vec({i: Fraction(1)},
                                        alg.mul_basis(j, k))
                    assert left == right, name
    # normal-form idempotence and multiplicativity on >= 10^4 samples
    pres = presentations["dw"]
    rs = truncate(pres).rewrite
    quiver = pres.quiver
    rng = random.Random(987654)
    names = [a.name for a in quiver.arrows]
    from ncdeform.ncpoly import NCPoly

    def sample_poly():
        terms = {}
        for _ in range(rng.randint(1, 2)):
            w = tuple(rng.choice(names)
                      for _ in range(rng.randint(0, 4)))
            terms[Path(1, w)] = Fraction(rng.randint(-3, 3))
        return NCPoly.from_dict(quiver, terms)

    checked = 0
    while checked < 10_000:
        p, q = sample_poly(), sample_poly()
        nfp, nfq = normal_form(p, rs), normal_form(q, rs)
        assert normal_form(nfp, rs) == nfp
        assert normal_form(multiply(p, q), rs) == \
            normal_form(multiply(nfp, nfq), rs)
        checked += 2
    # extension exactness and non-splitness on every Ext basis element
    for name, alg in algebras.items():
        S = simples(alg)
        for M in S:
            for N in S:
                es = ext1(M, N)
                for k in range(es.dim):
                    coeffs = [Fraction(1 if t == k else 0)
                              for t in range(es.dim)]
                    extn = realize_extension(es, coeffs)
                    assert extn.middle.total_dim() == \
                        M.total_dim() + N.total_dim(), name
                    assert extn.inject.then(extn.project).is_zero(), name
                    assert not is_split(extn), name
                if es.dim:
                    assert is_split(realize_extension(
                        es, [Fraction(0)] * es.dim)), name
    # growth verdicts are stable when the degree bound rises by 2
    for name, pres in presentations.items():
        bound = max(8, max((r.degree() for r in pres.relations),
                           default=2) + 2)
        lo = growth_report(complete_rewrite_system(
            list(pres.relations), bound, quiver=pres.quiver))
        hi = growth_report(complete_rewrite_system(
            list(pres.relations), bound + 2, quiver=pres.quiver))
        if lo.kind != "unknown":
            assert lo.kind == hi.kind, name
            if lo.kind == "finite":
                assert lo.dim == hi.dim, name


def test_criterion_8_byte_identical_reports():
    commands = [["basis", corpus_path(n)] for n in CORPUS]
    commands += [["recover", corpus_path(n)]
                 for n in ("a2", "loop2", "kx2", "kx3")]
    commands += [["findim", corpus_path(n), "--bound", "10"]
                 for n in CORPUS]
    commands += [["contract", corpus_path("a2"), "--vertices", "2",
                  "--compare-deform", "--check-opposite"]]
    runs = []
    for _ in range(3):
        chunks = []
        for argv in commands:
            code, out = _cli(argv)
            chunks.append(f"exit={code}\n{out}")
        runs.append("".join(chunks))
    assert runs[0] == runs[1] == runs[2]
