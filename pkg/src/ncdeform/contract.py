"""Contraction algebras A/AeA.

For the idempotent e supported on a set of vertices, A/AeA is spanned by
the words avoiding those vertices; on presentations this is the sub-quiver
of kept vertices with the surviving relation terms.  The module also
cross-checks the quotient against the versal deformation of the kept
sub-collection and against the opposite algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraPresentation, TruncatedAlgebra, opposite, truncate
from .deform import check_simple_collection, deform_versal
from .ncpoly import (Arrow, GrowthReport, NCPoly, Path, Quiver,
                     complete_rewrite_system, growth_report)
from .repmod import simples
from .reporting import Report


@dataclass(frozen=True)
class ContractionSpec:
    algebra: AlgebraPresentation
    contracted_vertices: frozenset[int]

    def __post_init__(self):
        n = self.algebra.quiver.vertex_count
        bad = [v for v in self.contracted_vertices if not 1 <= v <= n]
        if bad:
            raise ValueError(f"contracted vertices out of range: {bad}")

    @property
    def kept_vertices(self) -> list[int]:
        n = self.algebra.quiver.vertex_count
        return [v for v in range(1, n + 1)
                if v not in self.contracted_vertices]


def _path_avoids(p: Path, quiver: Quiver, dropped: frozenset[int]) -> bool:
    if p.start in dropped:
        return False
    v = p.start
    for name in p.arrows:
        v = quiver.arrow(name).target
        if v in dropped:
            return False
    return True


def contracted_presentation(spec: ContractionSpec) -> AlgebraPresentation:
    """The presentation of A/AeA on the sub-quiver of kept vertices."""
    pres = spec.algebra
    quiver = pres.quiver
    dropped = spec.contracted_vertices
    kept = spec.kept_vertices
    renum = {v: k for k, v in enumerate(kept, start=1)}
    arrows = tuple(Arrow(a.name, renum[a.source], renum[a.target])
                   for a in quiver.arrows
                   if a.source not in dropped and a.target not in dropped)
    sub = Quiver(len(kept), arrows)
    rels = []
    for rel in pres.relations:
        terms = {Path(renum[p.start], p.arrows): c for p, c in rel.terms
                 if _path_avoids(p, quiver, dropped)}
        img = NCPoly.from_dict(sub, terms)
        if not img.is_zero():
            rels.append(img)
    prec = None
    if pres.precedence:
        names = {a.name for a in arrows}
        prec = tuple(n for n in pres.precedence if n in names) or None
    return AlgebraPresentation(sub, tuple(rels),
                               pres.truncation_degree, prec)


def contract(spec: ContractionSpec) -> tuple[TruncatedAlgebra,
                                             AlgebraPresentation]:
    pres = contracted_presentation(spec)
    return truncate(pres), pres


def contraction_finiteness(spec: ContractionSpec,
                           degree_bound: int) -> GrowthReport:
    """Growth of the contracted presentation without the truncation ideal."""
    pres = contracted_presentation(spec)
    rs = complete_rewrite_system(
        list(pres.relations), degree_bound, quiver=pres.quiver,
        precedence=list(pres.precedence) if pres.precedence else None)
    return growth_report(rs)


def contraction_vs_deformation(spec: ContractionSpec,
                               max_stage: int) -> Report:
    """Versal parameter algebra of the kept simples vs the quotient A/AeA."""
    report = Report()
    full = truncate(spec.algebra)
    quotient, _ = contract(spec)
    kept = spec.kept_vertices
    if not kept:
        report.add("dim", quotient.dim == 0,
                   f"deform=0 contract={quotient.dim}")
        return report
    by_vertex = {v: s for v, s in
                 zip(range(1, full.quiver.vertex_count + 1), simples(full))}
    coll = check_simple_collection([by_vertex[v] for v in kept])
    state, pa, converged = deform_versal(coll, max_stage)
    report.add("converged", converged, f"stages={state.stage}")
    report.add("dim", pa.dim == quotient.dim,
               f"deform={pa.dim} contract={quotient.dim}")
    if converged:
        dl, ql = pa.layer_dims(), quotient.layer_dims()
        report.add("layers", dl == ql, f"deform={dl} contract={ql}")
    return report


def opposite_symmetry_check(spec: ContractionSpec) -> Report:
    """A/AeA and its opposite share dimension, degree profile, center."""
    report = Report()
    alg, _ = contract(spec)
    op_spec = ContractionSpec(opposite(spec.algebra),
                              spec.contracted_vertices)
    op_alg, _ = contract(op_spec)
    report.add("dim", alg.dim == op_alg.dim,
               f"algebra={alg.dim} opposite={op_alg.dim}")
    dp, odp = alg.degree_profile(), op_alg.degree_profile()
    report.add("degree_profile", dp == odp,
               f"algebra={dp} opposite={odp}")
    zc, ozc = alg.center_dim(), op_alg.center_dim()
    report.add("center_dim", zc == ozc, f"algebra={zc} opposite={ozc}")
    return report
