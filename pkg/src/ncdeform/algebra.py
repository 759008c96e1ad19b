"""Finite-dimensional truncated path-algebra quotients.

`truncate` realizes A/(I + J^d) with an explicit normal-word basis and an
exact multiplication table; the arrow ideal maps onto the radical, the
vertex idempotents are orthogonal and complete, and the augmentation onto
k^r is the vertex-span splitting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .linalg import Subspace
from .ncpoly import (NCPoly, Path, Quiver, Rule, RewriteSystem,
                     all_paths_of_degree, complete_rewrite_system,
                     enumerate_normal_words, normal_form)


class AdmissibilityError(ValueError):
    """A relation is not a parallel-path combination of degree >= 2."""


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[NCPoly, ...]
    truncation_degree: int = 10
    precedence: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.truncation_degree < 1:
            raise ValueError("truncation_degree must be positive")

    def validate(self):
        for rel in self.relations:
            if rel.is_zero():
                continue
            ends = {(p.start, p.end(self.quiver)) for p, _ in rel.terms}
            if len(ends) > 1:
                raise AdmissibilityError(
                    f"relation {rel.format()} mixes non-parallel paths")
            if rel.min_degree() < 2:
                raise AdmissibilityError(
                    f"relation {rel.format()} has a term of degree < 2; "
                    "relations must lie in the square of the arrow ideal")


def _basis_sort_key(alg_order, p: Path):
    return (len(p), p.start, tuple(alg_order._rank[a] for a in p.arrows))


class TruncatedAlgebra:
    """A/(I + J^d) with basis the normal words of the completed system."""

    def __init__(self, presentation: AlgebraPresentation):
        presentation.validate()
        self.presentation = presentation
        quiver = presentation.quiver
        d = presentation.truncation_degree
        maxrel = max((r.degree() for r in presentation.relations), default=0)
        bound = 2 * max(d, maxrel) + 2
        monomials = [NCPoly.path(quiver, p)
                     for p in all_paths_of_degree(quiver, d)]
        rels = [r for r in presentation.relations if not r.is_zero()]
        self.rewrite = complete_rewrite_system(
            rels + monomials, bound, quiver=quiver,
            precedence=list(presentation.precedence)
            if presentation.precedence else None)
        assert self.rewrite.saturated
        levels = enumerate_normal_words(self.rewrite, d)
        assert not levels[-1] or len(levels) <= d, "normal words reach J^d"
        basis = [p for lvl in levels for p in lvl]
        basis.sort(key=lambda p: _basis_sort_key(self.rewrite.order, p))
        self.basis: list[Path] = basis
        self.index: dict[Path, int] = {p: i for i, p in enumerate(basis)}
        self.dim = len(basis)
        self.quiver = quiver
        self.idempotent_index = {v: self.index[Path(v)]
                                 for v in range(1, quiver.vertex_count + 1)
                                 if Path(v) in self.index}
        self._table: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._build_table()
        self._radical_chain: Optional[list[Subspace]] = None

    # -- construction -----------------------------------------------------

    def _build_table(self):
        for i, p in enumerate(self.basis):
            pend = p.end(self.quiver)
            for j, q in enumerate(self.basis):
                if q.start != pend:
                    continue
                prod = Path(p.start, p.arrows + q.arrows)
                nf = normal_form(NCPoly.path(self.quiver, prod), self.rewrite)
                entry = {self.index[t]: c for t, c in nf.terms}
                if entry:
                    self._table[(i, j)] = entry

    # -- arithmetic on coordinate vectors ---------------------------------

    def mul_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self._table.get((i, j), {})

    def mul_vec(self, u: dict[int, Fraction], v: dict[int, Fraction]
                ) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if not cj:
                    continue
                for k, ck in self.mul_basis(i, j).items():
                    out[k] = out.get(k, Fraction(0)) + ci * cj * ck
        return {k: c for k, c in out.items() if c}

    def unit(self) -> dict[int, Fraction]:
        return {i: Fraction(1) for i in self.idempotent_index.values()}

    def word_degree(self, i: int) -> int:
        return len(self.basis[i])

    @property
    def radical_filtration(self) -> list[int]:
        """Word degree per basis element (the grading the basis carries)."""
        return [len(p) for p in self.basis]

    # -- structure --------------------------------------------------------

    def radical_chain(self) -> list[Subspace]:
        """Subspaces J^0=A > J > J^2 > ... down to 0 (J^0 is the whole)."""
        if self._radical_chain is not None:
            return self._radical_chain
        n = self.dim
        whole = Subspace(n, [[Fraction(1 if k == i else 0) for k in range(n)]
                             for i in range(n)])
        gens = [i for i in range(n) if len(self.basis[i]) >= 1]
        chain = [whole]
        current = Subspace(n, [[Fraction(1 if k == i else 0) for k in range(n)]
                               for i in gens])
        while current.dim > 0:
            chain.append(current)
            nxt = Subspace(n)
            for row in current.rows:
                u = {i: c for i, c in enumerate(row) if c}
                for g in gens:
                    prod = self.mul_vec(u, {g: Fraction(1)})
                    vec = [Fraction(0)] * n
                    for k, c in prod.items():
                        vec[k] = c
                    nxt.add(vec)
            current = nxt
        chain.append(current)  # the zero space
        self._radical_chain = chain
        return chain

    def layer_dims(self) -> list[int]:
        """Dimensions of J^k / J^{k+1}, k = 0 .. nilpotency-1."""
        chain = self.radical_chain()
        return [chain[k].dim - chain[k + 1].dim for k in range(len(chain) - 1)]

    def nilpotency(self) -> int:
        """Least m with J^m = 0."""
        return len(self.radical_chain()) - 1

    def degree_profile(self) -> list[int]:
        out: list[int] = []
        for p in self.basis:
            while len(out) <= len(p):
                out.append(0)
            out[len(p)] += 1
        return out

    def center_dim(self) -> int:
        """Dimension of {z : zb = bz for all basis b}."""
        from .linalg import nullspace
        n = self.dim
        rows = []
        for b in range(n):
            # z*b - b*z = 0, one equation row per output coordinate
            block = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for k, c in self.mul_basis(i, b).items():
                    block[k][i] += c
                for k, c in self.mul_basis(b, i).items():
                    block[k][i] -= c
            rows.extend(block)
        return len(nullspace(rows))


def truncate(pres: AlgebraPresentation) -> TruncatedAlgebra:
    return TruncatedAlgebra(pres)


def opposite(pres: AlgebraPresentation) -> AlgebraPresentation:
    """Reverse every arrow and every word in every relation."""
    quiver = pres.quiver
    op_arrows = tuple(type(a)(a.name, a.target, a.source)
                      for a in quiver.arrows)
    op_quiver = Quiver(quiver.vertex_count, op_arrows)
    op_rels = []
    for rel in pres.relations:
        d = {}
        for p, c in rel.terms:
            rev = Path(p.end(quiver), tuple(reversed(p.arrows)))
            d[rev] = c
        op_rels.append(NCPoly.from_dict(op_quiver, d))
    return AlgebraPresentation(op_quiver, tuple(op_rels),
                               pres.truncation_degree, pres.precedence)
