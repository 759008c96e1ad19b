"""The deformation engine: iterated universal extensions of a simple
collection, the endomorphism parameter algebra, and the recovery checks.

Each stage replaces F_i by the middle term of its universal extension by
the collection; the iteration stops when every Ext^1(F_i, F_j) vanishes
(the exact versal object) or at the stage cap (versal up to that order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .algebra import AlgebraPresentation, TruncatedAlgebra, truncate
from .linalg import Subspace, coords_in
from .ncpoly import Arrow, NCPoly, Path, Quiver
from .repmod import (Extension, ExtSpace, HomSpace, ModuleMap, RepModule,
                     ext1, hom, presentation, projectives, simples,
                     universal_extension)
from .reporting import Report


class NotSimpleCollection(ValueError):
    def __init__(self, i: int, j: int, dim: int):
        self.pair = (i, j)
        self.dim = dim
        super().__init__(
            f"not a simple collection: dim hom(F_{i}, F_{j}) = {dim}, "
            f"expected {1 if i == j else 0}")


@dataclass(frozen=True)
class SimpleCollection:
    modules: tuple[RepModule, ...]

    @property
    def r(self) -> int:
        return len(self.modules)


def check_simple_collection(mods: list[RepModule]) -> SimpleCollection:
    for i, M in enumerate(mods, start=1):
        for j, N in enumerate(mods, start=1):
            d = hom(M, N).dim
            if d != (1 if i == j else 0):
                raise NotSimpleCollection(i, j, d)
    return SimpleCollection(tuple(mods))


@dataclass
class ExtensionStep:
    stage: int
    component: int        # 1-based index i of the extended F_i
    target: int           # 1-based index j of the absorbed F_j
    classes: int          # dim Ext^1 used = number of non-trivial steps
    absorbed_dim: int     # classes * dim F_j


@dataclass
class DeformationState:
    collection: SimpleCollection
    stage: int
    modules: list[RepModule]
    surjections: list[ModuleMap]      # F^(n)_i -> F^(0)_i
    ledger: list[ExtensionStep] = field(default_factory=list)

    @property
    def step_count(self) -> int:
        """N: total number of non-trivial extension steps recorded."""
        return sum(s.classes for s in self.ledger)

    def audit_flatness(self) -> bool:
        """dim F^(n)_i must equal dim F^(0)_i plus the absorbed total."""
        for i, (M, F0) in enumerate(zip(self.modules,
                                        self.collection.modules), start=1):
            absorbed = sum(s.absorbed_dim for s in self.ledger
                           if s.component == i)
            if M.total_dim() != F0.total_dim() + absorbed:
                return False
        return True


# ---------------------------------------------------------------------------
# parameter algebras (objects of the r-pointed Artin category)


class ParameterAlgebra:
    """End(F) for F = (+) F_i, with the block structure constants and the
    augmentation onto k^r induced by the surjections onto the collection."""

    def __init__(self, modules: list[RepModule],
                 surjections: list[ModuleMap]):
        self.r = len(modules)
        self.modules = list(modules)
        self.blocks: dict[tuple[int, int], HomSpace] = {}
        labels: list[tuple[int, int, int]] = []   # (i, j, basis position)
        for i in range(1, self.r + 1):
            for j in range(1, self.r + 1):
                # block (i, j) holds maps F_j -> F_i
                hs = hom(modules[j - 1], modules[i - 1])
                self.blocks[(i, j)] = hs
                labels.extend((i, j, k) for k in range(hs.dim))
        self.labels = labels
        self.dim = len(labels)
        self.offset: dict[tuple[int, int], int] = {}
        pos = 0
        for i in range(1, self.r + 1):
            for j in range(1, self.r + 1):
                self.offset[(i, j)] = pos
                pos += self.blocks[(i, j)].dim
        self._table: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._build_table()
        self.idempotents = self._find_idempotents()
        self.augmentation = self._build_augmentation(surjections)
        self._m_chain: Optional[list[Subspace]] = None

    # -- construction ------------------------------------------------------

    def _block_coords(self, i: int, j: int, f: ModuleMap) -> list[Fraction]:
        hs = self.blocks[(i, j)]
        flats = [h.flat() for h in hs.basis]
        co = coords_in(flats, f.flat())
        if co is None:
            raise RuntimeError("composite escaped its Hom block")
        return co

    def _build_table(self):
        for a, (i, j, k) in enumerate(self.labels):
            f = self.blocks[(i, j)].basis[k]
            for b, (l, m, n) in enumerate(self.labels):
                if j != l:
                    continue
                g = self.blocks[(l, m)].basis[n]
                # (i,j)-block times (j,m)-block: F_m -> F_j -> F_i
                comp = g.then(f)
                co = self._block_coords(i, m, comp)
                entry = {self.offset[(i, m)] + t: c
                         for t, c in enumerate(co) if c}
                if entry:
                    self._table[(a, b)] = entry

    def _find_idempotents(self) -> list[dict[int, Fraction]]:
        out = []
        for i in range(1, self.r + 1):
            ident = ModuleMap.identity(self.modules[i - 1])
            co = self._block_coords(i, i, ident)
            out.append({self.offset[(i, i)] + t: c
                        for t, c in enumerate(co) if c})
        return out

    def _build_augmentation(self, surjections: list[ModuleMap]
                            ) -> list[list[Fraction]]:
        """Per basis element, its image in k^r: the scalar induced on the
        simple quotient of the diagonal blocks."""
        aug = []
        for (i, j, k) in self.labels:
            vec = [Fraction(0)] * self.r
            if i == j:
                g = self.blocks[(i, i)].basis[k]
                pi = surjections[i - 1]
                lhs = g.then(pi).flat()
                ref = pi.flat()
                lam = None
                for x, y in zip(lhs, ref):
                    if y != 0:
                        lam = x / y
                        break
                if lam is None:
                    raise RuntimeError("zero surjection onto the collection")
                for x, y in zip(lhs, ref):
                    if x != lam * y:
                        raise RuntimeError(
                            "endomorphism does not descend to a scalar; "
                            "hom(F_i, F_i^0) is not one-dimensional")
                vec[i - 1] = lam
            aug.append(vec)
        return aug

    # -- arithmetic --------------------------------------------------------

    def mul_basis(self, a: int, b: int) -> dict[int, Fraction]:
        return self._table.get((a, b), {})

    def mul_vec(self, u: dict[int, Fraction], v: dict[int, Fraction]
                ) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for c, cc in self.mul_basis(a, b).items():
                    out[c] = out.get(c, Fraction(0)) + ca * cb * cc
        return {c: x for c, x in out.items() if x}

    # -- Artin structure ---------------------------------------------------

    def augmentation_ideal(self) -> Subspace:
        rows = []
        for i in range(self.r):
            rows.append([self.augmentation[b][i] for b in range(self.dim)])
        basis = linalg.nullspace(rows)
        return Subspace(self.dim, basis)

    def m_chain(self) -> list[Subspace]:
        """M^0 = R > M > M^2 > ... > 0."""
        if self._m_chain is not None:
            return self._m_chain
        whole = Subspace(self.dim, linalg.identity(self.dim))
        chain = [whole]
        m = self.augmentation_ideal()
        mgens = [list(row) for row in m.rows]
        cur = m
        while cur.dim > 0:
            chain.append(cur)
            nxt = Subspace(self.dim)
            for row in cur.rows:
                u = {i: c for i, c in enumerate(row) if c}
                for g in mgens:
                    v = {i: c for i, c in enumerate(g) if c}
                    prod = self.mul_vec(u, v)
                    vec = [Fraction(0)] * self.dim
                    for k, c in prod.items():
                        vec[k] = c
                    nxt.add(vec)
            if nxt.dim == cur.dim:
                raise RuntimeError("augmentation ideal is not nilpotent; "
                                   "not an r-pointed Artin algebra")
            cur = nxt
        chain.append(cur)
        self._m_chain = chain
        return chain

    def layer_dims(self) -> list[int]:
        chain = self.m_chain()
        return [chain[k].dim - chain[k + 1].dim for k in range(len(chain) - 1)]

    def nilpotency(self) -> int:
        """Least m with M^m = 0."""
        return len(self.m_chain()) - 1


# ---------------------------------------------------------------------------
# the versal iteration


def deform_versal(coll: SimpleCollection, max_stage: int
                  ) -> tuple[DeformationState, ParameterAlgebra, bool]:
    mods = list(coll.modules)
    surjs = [ModuleMap.identity(m) for m in mods]
    state = DeformationState(coll, 0, mods, surjs)
    converged = False
    for stage in range(max_stage + 1):
        ext_dims = []
        new_mods = []
        any_ext = False
        for i, G in enumerate(state.modules, start=1):
            extn, exts = universal_extension(G, list(coll.modules))
            counts = [e.dim for e in exts]
            for e in exts:
                for h in e.cocycles:
                    assert not e.is_coboundary(h), \
                        "universal extension used a trivial class"
            ext_dims.append(counts)
            if sum(counts):
                any_ext = True
            new_mods.append(extn)
        if not any_ext:
            converged = True
            break
        if stage == max_stage:
            break
        mods2, surjs2 = [], []
        for i, (G, extn) in enumerate(zip(state.modules, new_mods), start=1):
            counts = ext_dims[i - 1]
            if sum(counts) == 0:
                mods2.append(G)
                surjs2.append(state.surjections[i - 1])
                continue
            mods2.append(extn.middle)
            surjs2.append(extn.project.then(state.surjections[i - 1]))
            for j, c in enumerate(counts, start=1):
                if c:
                    state.ledger.append(ExtensionStep(
                        stage + 1, i, j, c,
                        c * coll.modules[j - 1].total_dim()))
        state = DeformationState(coll, state.stage + 1, mods2, surjs2,
                                 state.ledger)
    pa = ParameterAlgebra(state.modules, state.surjections)
    return state, pa, converged


def iterated_extension_dim_audit(state: DeformationState,
                                 pa: Optional[ParameterAlgebra] = None
                                 ) -> bool:
    """dim End(G^N) = r + N for iterated non-trivial extensions."""
    if pa is None:
        pa = ParameterAlgebra(state.modules, state.surjections)
    return pa.dim == state.collection.r + state.step_count


# ---------------------------------------------------------------------------
# presentation extraction (parameter algebras re-enter the pipeline)


def extract_presentation(pa: ParameterAlgebra) -> AlgebraPresentation:
    """Quiver on r vertices with arrows a basis of M/M^2 and relations a
    generating set of the kernel of the path-algebra surjection, up to the
    nilpotency degree of M."""
    r = pa.r
    nilp = pa.nilpotency()
    m_chain = pa.m_chain()
    m1 = m_chain[1] if len(m_chain) > 2 else Subspace(pa.dim)
    # block-split M and M^2 using the label grading
    block_idx: dict[tuple[int, int], list[int]] = {
        (i, j): [] for i in range(1, r + 1) for j in range(1, r + 1)}
    for pos, (i, j, _) in enumerate(pa.labels):
        block_idx[(i, j)].append(pos)
    m_blocks: dict[tuple[int, int], list[list[Fraction]]] = {}
    for (i, j), idxs in block_idx.items():
        # project each rref row onto the block; keep it if it stays inside M
        proj = Subspace(pa.dim)
        for row in m1.rows:
            v = [row[p] if p in idxs else Fraction(0) for p in range(pa.dim)]
            # keep only if the projection stays inside M
            if m1.contains(v):
                proj.add(v)
        m_blocks[(i, j)] = [list(x) for x in proj.rows]
    m2_blocks: dict[tuple[int, int], Subspace] = {
        key: Subspace(pa.dim) for key in block_idx}
    for (i, k1) in block_idx:
        for (k2, j) in block_idx:
            if k1 != k2:
                continue
            for u in m_blocks[(i, k1)]:
                for w in m_blocks[(k2, j)]:
                    prod = pa.mul_vec({p: c for p, c in enumerate(u) if c},
                                      {p: c for p, c in enumerate(w) if c})
                    vec = [Fraction(0)] * pa.dim
                    for p, c in prod.items():
                        vec[p] = c
                    m2_blocks[(i, j)].add(vec)
    arrows: list[Arrow] = []
    lifts: list[list[Fraction]] = []
    n_arrow = 0
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            span = Subspace(pa.dim, [list(x) for x in m2_blocks[(i, j)].rows])
            for vec in m_blocks[(i, j)]:
                if span.add(list(vec)):
                    n_arrow += 1
                    arrows.append(Arrow(f"g{n_arrow}", i, j))
                    lifts.append(list(vec))
    quiver = Quiver(r, tuple(arrows))
    lift_of = {a.name: lifts[k] for k, a in enumerate(arrows)}

    # kernel of the path-algebra surjection, degree by degree up to nilp
    from .ncpoly import all_paths_of_degree
    paths: list[Path] = []
    images: list[list[Fraction]] = []
    for d in range(1, nilp + 1):
        for p in all_paths_of_degree(quiver, d):
            vec = None
            for name in p.arrows:
                g = {k: c for k, c in enumerate(lift_of[name]) if c}
                vec = g if vec is None else pa.mul_vec(vec, g)
            img = [Fraction(0)] * pa.dim
            for k, c in (vec or {}).items():
                img[k] = c
            paths.append(p)
            images.append(img)
    if not paths:
        return AlgebraPresentation(quiver, (), max(nilp + 1, 2))
    cols = [list(c) for c in zip(*images)]
    kernel = linalg.nullspace(cols)

    def vec_to_poly(v) -> NCPoly:
        return NCPoly.from_dict(quiver, {paths[k]: c
                                         for k, c in enumerate(v) if c})

    def ideal_products(v) -> list[list[Fraction]]:
        """a * v * b for all path pairs, truncated past degree nilp."""
        poly = vec_to_poly(v)
        out = []
        all_pre = [p for d in range(0, nilp) for p in all_paths_of_degree(quiver, d)]
        pidx = {p: k for k, p in enumerate(paths)}
        for a in all_pre:
            for b in all_pre:
                if len(a) + len(b) == 0:
                    continue
                terms: dict[Path, Fraction] = {}
                for p, c in poly.terms:
                    if a.end(quiver) != p.start or p.end(quiver) != b.start:
                        continue
                    w = Path(a.start, a.arrows + p.arrows + b.arrows)
                    if len(w) > nilp:
                        continue
                    terms[w] = terms.get(w, Fraction(0)) + c
                if terms:
                    vec = [Fraction(0)] * len(paths)
                    for w, c in terms.items():
                        vec[pidx[w]] = c
                    out.append(vec)
        return out

    kernel = sorted(kernel, key=lambda v: (
        max(len(paths[k]) for k, c in enumerate(v) if c),
        [(k, str(c)) for k, c in enumerate(v) if c]))
    gens: list[NCPoly] = []
    span = Subspace(len(paths))
    for v in kernel:
        if span.contains(v):
            continue
        gens.append(vec_to_poly(v))
        span.add(list(v))
        for w in ideal_products(v):
            span.add(w)
    for g in gens:
        assert g.min_degree() >= 2, "kernel generator of degree < 2"
    return AlgebraPresentation(quiver, tuple(gens), nilp + 1)


# ---------------------------------------------------------------------------
# recovery (the algebra-side of the versal-deformation theorem)


def recovery_check(alg: TruncatedAlgebra, max_stage: int = 50) -> Report:
    report = Report()
    S = simples(alg)
    P = projectives(alg)
    coll = check_simple_collection(S)
    state, pa, converged = deform_versal(coll, max_stage)
    report.add("converged", converged, f"stages={state.stage}")
    ok = True
    detail = ""
    for i, F in enumerate(state.modules, start=1):
        for j, Sj in enumerate(S, start=1):
            d = hom(F, Sj).dim
            if d != (1 if i == j else 0):
                ok = False
                detail = f"hom(F_{i},S_{j})={d}"
    report.add("hom_delta", ok, detail)
    ok = True
    detail = ""
    for i, F in enumerate(state.modules, start=1):
        for j, Sj in enumerate(S, start=1):
            d = ext1(F, Sj).dim
            if d != 0:
                ok = False
                detail = f"ext1(F_{i},S_{j})={d}"
    report.add("ext_vanishing", ok, detail)
    from .repmod import is_isomorphic
    iso = all(is_isomorphic(F, Pi) for F, Pi in zip(state.modules, P))
    report.add("modules_are_projectives", iso)
    report.add("param_dim", pa.dim == alg.dim,
               f"param={pa.dim} algebra={alg.dim}")
    report.add("param_layers", pa.layer_dims() == alg.layer_dims(),
               f"param={pa.layer_dims()} algebra={alg.layer_dims()}")
    try:
        pres2 = extract_presentation(pa)
        re_alg = truncate(pres2)
        report.add("presentation_roundtrip",
                   re_alg.layer_dims() == pa.layer_dims(),
                   f"roundtrip={re_alg.layer_dims()}")
    except Exception as exc:  # report, never crash the check run
        report.add("presentation_roundtrip", False, f"error={exc}")
    report.add("dim_audit", iterated_extension_dim_audit(state, pa),
               f"r={coll.r} N={state.step_count} dim={pa.dim}")
    return report
