"""Finite-dimensional right modules over a truncated algebra.

Modules are vertex spaces of row vectors with one exact-rational matrix
per arrow acting on the right.  Hom spaces come from the intertwining
equations, Ext^1 from the kernel of a minimal projective cover, and
extensions are realized as explicit pushouts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random
from typing import Optional

from . import linalg
from .linalg import Mat, Subspace, coords_in, nullspace
from .ncpoly import NCPoly, Path


class ModuleError(ValueError):
    """The data does not define a module over the presenting algebra."""


class TruncationOverflow(RuntimeError):
    """A module needs more radical layers than the algebra truncation has;
    rebuild the algebra with a larger truncation degree."""


def _zeros(m, n):
    return linalg.zeros(m, n)


@dataclass(frozen=True)
class RepModule:
    algebra: object                      # TruncatedAlgebra
    dims: tuple[int, ...]                # per vertex (1-based vertex v -> dims[v-1])
    action: tuple[tuple[str, tuple], ...]  # arrow name -> matrix (rows as tuples)

    @staticmethod
    def make(algebra, dims, action: dict[str, Mat]) -> "RepModule":
        quiver = algebra.quiver
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.vertex_count:
            raise ModuleError("dims length must equal vertex count")
        act = {}
        for a in quiver.arrows:
            m = action.get(a.name)
            if m is None:
                m = _zeros(dims[a.source - 1], dims[a.target - 1])
            if len(m) != dims[a.source - 1] or any(
                    len(row) != dims[a.target - 1] for row in m):
                raise ModuleError(f"matrix for arrow {a.name} has wrong shape")
            act[a.name] = tuple(tuple(Fraction(x) for x in row) for row in m)
        mod = RepModule(algebra, dims,
                        tuple(sorted(act.items())))
        mod.check()
        return mod

    # -- basics -----------------------------------------------------------

    @property
    def matrices(self) -> dict[str, Mat]:
        return {name: [list(row) for row in m] for name, m in self.action}

    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def arrow_matrix(self, name: str) -> Mat:
        for n, m in self.action:
            if n == name:
                return [list(row) for row in m]
        raise KeyError(name)

    def path_matrix(self, p: Path) -> Mat:
        quiver = self.algebra.quiver
        m = linalg.identity(self.dim_at(p.start))
        for name in p.arrows:
            m = linalg.mat_mul(m, self.arrow_matrix(name))
        return m

    def poly_matrix(self, poly: NCPoly, start: int, end: int) -> Mat:
        out = _zeros(self.dim_at(start), self.dim_at(end))
        quiver = self.algebra.quiver
        for p, c in poly.terms:
            out = linalg.mat_add(out, linalg.mat_scale(c, self.path_matrix(p)))
        return out

    # -- validity ---------------------------------------------------------

    def check(self):
        quiver = self.algebra.quiver
        for rel in self.algebra.presentation.relations:
            if rel.is_zero():
                continue
            p0 = rel.terms[0][0]
            s, t = p0.start, p0.end(quiver)
            if self.dim_at(s) and self.dim_at(t):
                if not linalg.mat_eq_zero(self.poly_matrix(rel, s, t)):
                    raise ModuleError(
                        f"relation {rel.format()} does not act as zero")
        if self.radical_length() > self.algebra.presentation.truncation_degree:
            raise TruncationOverflow(
                "module radical length exceeds the algebra truncation degree; "
                "raise `truncate` in the presentation")

    def radical_series(self) -> list[list[Subspace]]:
        """Per-vertex chains M >= MJ >= MJ^2 >= ... down to zero."""
        quiver = self.algebra.quiver
        cur = [Subspace(self.dim_at(v), linalg.identity(self.dim_at(v)))
               for v in range(1, quiver.vertex_count + 1)]
        chain = [cur]
        while any(s.dim for s in cur):
            nxt = [Subspace(self.dim_at(v))
                   for v in range(1, quiver.vertex_count + 1)]
            for a in quiver.arrows:
                m = self.arrow_matrix(a.name)
                for row in cur[a.source - 1].rows:
                    nxt[a.target - 1].add(linalg.vec_mat(list(row), m))
            if [s.dim for s in nxt] == [s.dim for s in cur]:
                # not nilpotent: cannot happen for genuine modules
                raise ModuleError("arrow action is not nilpotent")
            chain.append(nxt)
            cur = nxt
        return chain

    def radical_length(self) -> int:
        return len(self.radical_series()) - 1

    def is_zero(self) -> bool:
        return self.total_dim() == 0


@dataclass(frozen=True)
class ModuleMap:
    domain: RepModule
    codomain: RepModule
    mats: tuple[tuple, ...]   # per vertex, dims_dom[v] x dims_cod[v]

    @staticmethod
    def make(domain: RepModule, codomain: RepModule, mats: list[Mat]
             ) -> "ModuleMap":
        return ModuleMap(domain, codomain,
                         tuple(tuple(tuple(Fraction(x) for x in row)
                                     for row in m) for m in mats))

    def mat(self, v: int) -> Mat:
        return [list(row) for row in self.mats[v - 1]]

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """self followed by other (row-vector convention)."""
        return ModuleMap.make(self.domain, other.codomain,
                              [linalg.mat_mul(self.mat(v), other.mat(v))
                               for v in range(1, len(self.mats) + 1)])

    def flat(self) -> list:
        out = []
        for m in self.mats:
            for row in m:
                out.extend(row)
        return out

    def is_zero(self) -> bool:
        return all(all(all(x == 0 for x in row) for row in m)
                   for m in self.mats)

    @staticmethod
    def identity(mod: RepModule) -> "ModuleMap":
        return ModuleMap.make(mod, mod,
                              [linalg.identity(d) for d in mod.dims])

    @staticmethod
    def zero(domain: RepModule, codomain: RepModule) -> "ModuleMap":
        return ModuleMap.make(domain, codomain,
                              [_zeros(a, b) for a, b in
                               zip(domain.dims, codomain.dims)])


@dataclass
class HomSpace:
    domain: RepModule
    codomain: RepModule
    basis: list[ModuleMap]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combo(self, coeffs) -> ModuleMap:
        mats = [_zeros(a, b) for a, b in
                zip(self.domain.dims, self.codomain.dims)]
        for c, h in zip(coeffs, self.basis):
            if c:
                for vi in range(len(mats)):
                    mats[vi] = linalg.mat_add(
                        mats[vi], linalg.mat_scale(c, h.mat(vi + 1)))
        return ModuleMap.make(self.domain, self.codomain, mats)


def hom(M: RepModule, N: RepModule) -> HomSpace:
    """Exact solution of the intertwining equations."""
    if M.algebra is not N.algebra and M.algebra.presentation != N.algebra.presentation:
        raise ModuleError("modules over different algebras")
    quiver = M.algebra.quiver
    r = quiver.vertex_count
    sizes = [M.dims[v] * N.dims[v] for v in range(r)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    nvars = offsets[-1]

    def var(v, i, j):  # v 1-based
        return offsets[v - 1] + i * N.dims[v - 1] + j

    rows = []
    for a in quiver.arrows:
        s, t = a.source, a.target
        Ma, Na = M.arrow_matrix(a.name), N.arrow_matrix(a.name)
        # Ma @ f_t - f_s @ Na = 0, entrywise
        for i in range(M.dims[s - 1]):
            for j in range(N.dims[t - 1]):
                row = [Fraction(0)] * nvars
                for k in range(M.dims[t - 1]):
                    row[var(t, k, j)] += Ma[i][k]
                for l in range(N.dims[s - 1]):
                    row[var(s, i, l)] -= Na[l][j]
                if any(row):
                    rows.append(row)
    basis_vecs = nullspace(rows) if rows else linalg.identity(nvars)
    basis = []
    for vec in basis_vecs:
        mats = []
        for v in range(1, r + 1):
            m = [[vec[var(v, i, j)] for j in range(N.dims[v - 1])]
                 for i in range(M.dims[v - 1])]
            mats.append(m)
        basis.append(ModuleMap.make(M, N, mats))
    return HomSpace(M, N, basis)


# ---------------------------------------------------------------------------
# simples, projectives


def simples(alg) -> list[RepModule]:
    """One-dimensional module per vertex, all arrows acting as zero."""
    out = []
    r = alg.quiver.vertex_count
    for v in range(1, r + 1):
        dims = [1 if w == v else 0 for w in range(1, r + 1)]
        out.append(RepModule.make(alg, dims, {}))
    return out


def projectives(alg) -> list[RepModule]:
    """P_v = e_v A realized on the normal-word basis."""
    return [projective(alg, v) for v in range(1, alg.quiver.vertex_count + 1)]


def projective(alg, v: int) -> RepModule:
    quiver = alg.quiver
    r = quiver.vertex_count
    by_vertex: dict[int, list[int]] = {w: [] for w in range(1, r + 1)}
    for i, p in enumerate(alg.basis):
        if p.start == v:
            by_vertex[p.end(quiver)].append(i)
    dims = [len(by_vertex[w]) for w in range(1, r + 1)]
    pos = {i: k for w in range(1, r + 1) for k, i in enumerate(by_vertex[w])}
    action: dict[str, Mat] = {}
    for a in quiver.arrows:
        m = _zeros(dims[a.source - 1], dims[a.target - 1])
        ai = alg.index.get(Path(a.source, (a.name,)))
        for i in by_vertex[a.source]:
            if ai is None:
                continue
            for k, c in alg.mul_basis(i, ai).items():
                m[pos[i]][pos[k]] += c
        action[a.name] = m
    return RepModule.make(alg, dims, action)


def direct_sum(mods: list[RepModule]) -> RepModule:
    if not mods:
        raise ValueError("empty direct sum needs an algebra")
    alg = mods[0].algebra
    r = alg.quiver.vertex_count
    dims = [sum(m.dims[v] for m in mods) for v in range(r)]
    action: dict[str, Mat] = {}
    for a in alg.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        big = _zeros(dims[s], dims[t])
        ro = co = 0
        for m in mods:
            blk = m.arrow_matrix(a.name)
            for i in range(m.dims[s]):
                for j in range(m.dims[t]):
                    big[ro + i][co + j] = blk[i][j]
            ro += m.dims[s]
            co += m.dims[t]
        action[a.name] = big
    return RepModule.make(alg, dims, action)


def sum_injections(mods: list[RepModule], total: RepModule) -> list[ModuleMap]:
    r = total.algebra.quiver.vertex_count
    out = []
    offs = [0] * r
    for m in mods:
        mats = []
        for v in range(r):
            mm = _zeros(m.dims[v], total.dims[v])
            for i in range(m.dims[v]):
                mm[i][offs[v] + i] = Fraction(1)
            mats.append(mm)
        out.append(ModuleMap.make(m, total, mats))
        offs = [o + m.dims[v] for v, o in enumerate(offs)]
    return out


# ---------------------------------------------------------------------------
# projective presentations and Ext^1


@dataclass
class Presentation:
    module: RepModule
    cover: RepModule           # P^0
    surj: ModuleMap            # P^0 -> M
    kernel: RepModule          # K
    incl: ModuleMap            # K -> P^0


def top_generators(M: RepModule) -> list[tuple[int, list]]:
    """(vertex, row vector) lifts of a basis of M / M.J."""
    quiver = M.algebra.quiver
    rad = [Subspace(M.dims[v - 1]) for v in range(1, quiver.vertex_count + 1)]
    for a in quiver.arrows:
        m = M.arrow_matrix(a.name)
        for i in range(M.dims[a.source - 1]):
            rad[a.target - 1].add(list(m[i]))
    gens = []
    for v in range(1, quiver.vertex_count + 1):
        for c in rad[v - 1].complement_indices():
            vec = [Fraction(0)] * M.dims[v - 1]
            vec[c] = Fraction(1)
            gens.append((v, vec))
    return gens


def presentation(M: RepModule) -> Presentation:
    """Minimal projective cover P^0 -> M and its kernel, as modules."""
    alg = M.algebra
    quiver = alg.quiver
    r = quiver.vertex_count
    gens = top_generators(M)
    covers = [projective(alg, v) for v, _ in gens]
    if covers:
        P0 = direct_sum(covers)
    else:
        P0 = RepModule.make(alg, [0] * r, {})
    # surjection: basis element (g, word b: v_g -> w) |-> gen_g . b
    pi_mats = []
    # reproduce the basis layout of direct_sum/projective: per vertex w,
    # concatenated over generators, each listing alg basis words v_g -> w
    for w in range(1, r + 1):
        rows = []
        for (v, vec) in gens:
            words = [p for p in alg.basis if p.start == v and p.end(quiver) == w]
            for b in words:
                act = M.path_matrix(b)
                rows.append(linalg.vec_mat(vec, act))
        if not rows:
            rows = _zeros(0, M.dims[w - 1])
        pi_mats.append(rows)
    pi = ModuleMap.make(P0, M, pi_mats)
    # kernel per vertex: rows x with x @ pi[w] = 0
    kb = []
    for w in range(1, r + 1):
        mat_w = pi.mat(w)
        if P0.dims[w - 1] == 0:
            kb.append([])
        elif M.dims[w - 1] == 0:
            kb.append([list(row) for row in linalg.identity(P0.dims[w - 1])])
        else:
            kb.append(nullspace([list(c) for c in zip(*mat_w)]))
    kdims = [len(b) for b in kb]
    kact: dict[str, Mat] = {}
    for a in quiver.arrows:
        s, t = a.source, a.target
        m = P0.arrow_matrix(a.name)
        out = _zeros(kdims[s - 1], kdims[t - 1])
        for i, row in enumerate(kb[s - 1]):
            img = linalg.vec_mat(list(row), m)
            co = coords_in(kb[t - 1], img)
            if co is None:
                raise ModuleError("kernel is not arrow-stable (internal error)")
            out[i] = co
        kact[a.name] = out
    K = RepModule.make(alg, kdims, kact)
    incl = ModuleMap.make(K, P0,
                          [kb[v] if kb[v] else _zeros(0, P0.dims[v])
                           for v in range(r)])
    return Presentation(M, P0, pi, K, incl)


@dataclass
class ExtSpace:
    """Ext^1(M, N) as Hom(K, N) modulo restrictions from Hom(P^0, N)."""
    domain: RepModule          # M
    codomain: RepModule        # N
    pres: Presentation
    cocycles: list[ModuleMap]  # representatives K -> N
    boundary_image: Subspace   # restrictions of Hom(P^0, N), flattened

    @property
    def dim(self) -> int:
        return len(self.cocycles)

    def is_coboundary(self, phi: ModuleMap) -> bool:
        return self.boundary_image.contains(phi.flat())


def ext1(M: RepModule, N: RepModule,
         pres: Optional[Presentation] = None) -> ExtSpace:
    if pres is None:
        pres = presentation(M)
    hom_kn = hom(pres.kernel, N)
    hom_pn = hom(pres.cover, N)
    nflat = sum(pres.kernel.dims[v] * N.dims[v]
                for v in range(len(N.dims)))
    image = Subspace(nflat)
    for g in hom_pn.basis:
        image.add(pres.incl.then(g).flat())
    boundary = Subspace(nflat, [list(r) for r in image.rows])
    reps = []
    grow = Subspace(nflat, [list(r) for r in image.rows])
    for h in hom_kn.basis:
        if grow.add(h.flat()):
            reps.append(h)
    return ExtSpace(M, N, pres, reps, boundary)


# ---------------------------------------------------------------------------
# realizing extensions


@dataclass
class Extension:
    middle: RepModule
    inject: ModuleMap          # N -> E
    project: ModuleMap         # E -> M
    sub: RepModule             # N
    quotient: RepModule        # M


def _pushout(pres: Presentation, phi: ModuleMap, N: RepModule) -> Extension:
    """E = (N (+) P^0) / {(phi(k), -k)}, with 0 -> N -> E -> M -> 0."""
    alg = pres.module.algebra
    quiver = alg.quiver
    r = quiver.vertex_count
    M = pres.module
    K, P0 = pres.kernel, pres.cover
    W = []
    amb = [N.dims[v] + P0.dims[v] for v in range(r)]
    for v in range(1, r + 1):
        sub = Subspace(amb[v - 1])
        phi_v = phi.mat(v)
        incl_v = pres.incl.mat(v)
        for i in range(K.dims[v - 1]):
            row = list(phi_v[i]) + [-x for x in incl_v[i]]
            sub.add(row)
        W.append(sub)
    edims = [amb[v] - W[v].dim for v in range(r)]
    freecols = [W[v].complement_indices() for v in range(r)]

    def qcoords(v, vec):
        red = W[v - 1].reduce(vec)
        return [red[c] for c in freecols[v - 1]]

    eact: dict[str, Mat] = {}
    for a in quiver.arrows:
        s, t = a.source, a.target
        Na, Pa = N.arrow_matrix(a.name), P0.arrow_matrix(a.name)
        out = _zeros(edims[s - 1], edims[t - 1])
        for i, c in enumerate(freecols[s - 1]):
            if c < N.dims[s - 1]:
                img = list(Na[c]) + [Fraction(0)] * P0.dims[t - 1]
            else:
                img = [Fraction(0)] * N.dims[t - 1] + \
                    list(Pa[c - N.dims[s - 1]])
            out[i] = qcoords(t, img)
        eact[a.name] = out
    E = RepModule.make(alg, edims, eact)
    inj_mats = []
    for v in range(1, r + 1):
        m = _zeros(N.dims[v - 1], edims[v - 1])
        for i in range(N.dims[v - 1]):
            vec = [Fraction(0)] * amb[v - 1]
            vec[i] = Fraction(1)
            m[i] = qcoords(v, vec)
        inj_mats.append(m)
    proj_mats = []
    for v in range(1, r + 1):
        pi_v = pres.surj.mat(v)
        m = _zeros(edims[v - 1], M.dims[v - 1])
        for i, c in enumerate(freecols[v - 1]):
            if c >= N.dims[v - 1]:
                m[i] = list(pi_v[c - N.dims[v - 1]])
        proj_mats.append(m)
    return Extension(E, ModuleMap.make(N, E, inj_mats),
                     ModuleMap.make(E, M, proj_mats), N, M)


def realize_extension(ext: ExtSpace, coeffs) -> Extension:
    """Realize the class with the given coordinates in the cocycle basis."""
    mats = [_zeros(a, b) for a, b in
            zip(ext.pres.kernel.dims, ext.codomain.dims)]
    for c, h in zip(coeffs, ext.cocycles):
        if c:
            for vi in range(len(mats)):
                mats[vi] = linalg.mat_add(mats[vi],
                                          linalg.mat_scale(c, h.mat(vi + 1)))
    phi = ModuleMap.make(ext.pres.kernel, ext.codomain, mats)
    return _pushout(ext.pres, phi, ext.codomain)


def is_split(extn: Extension) -> bool:
    """Whether the surjection E -> M admits a module splitting."""
    M, E = extn.quotient, extn.middle
    h = hom(M, E)
    nflat = sum(a * a for a in M.dims)
    cols = []
    for g in h.basis:
        cols.append(g.then(extn.project).flat())
    target = ModuleMap.identity(M).flat()
    if not cols:
        return all(x == 0 for x in target)
    matrix = [list(c) for c in zip(*cols)]
    return linalg.solve(matrix, target) is not None


def universal_extension(G: RepModule, targets: list[RepModule]
                        ) -> tuple[Extension, list["ExtSpace"]]:
    """Middle term of the universal extension of G by the targets: one copy
    of target j per basis class of Ext^1(G, target_j).  Returns the
    extension and the Ext spaces used."""
    pres = presentation(G)
    exts = [ext1(G, F, pres) for F in targets]
    counts = [e.dim for e in exts]
    pieces: list[RepModule] = []
    cocycles: list[ModuleMap] = []
    for e, F in zip(exts, targets):
        for h in e.cocycles:
            pieces.append(F)
            cocycles.append(h)
    if not pieces:
        # fixed point: the split "extension" by the zero module
        r = G.algebra.quiver.vertex_count
        Z = RepModule.make(G.algebra, [0] * r, {})
        zero_phi = ModuleMap.zero(pres.kernel, Z)
        return _pushout(pres, zero_phi, Z), exts
    N = direct_sum(pieces)
    injs = sum_injections(pieces, N)
    phi_mats = []
    r = G.algebra.quiver.vertex_count
    for v in range(1, r + 1):
        rows = _zeros(pres.kernel.dims[v - 1], N.dims[v - 1])
        for h, inj in zip(cocycles, injs):
            hm = h.then(inj).mat(v)
            rows = linalg.mat_add(rows, hm)
        phi_mats.append(rows)
    phi = ModuleMap.make(pres.kernel, N, phi_mats)
    return _pushout(pres, phi, N), exts


# ---------------------------------------------------------------------------
# isomorphism testing


def is_isomorphic(M: RepModule, N: RepModule, samples: int = 60) -> bool:
    """True iff the modules are isomorphic.  Searches the Hom space for an
    element invertible at every vertex: basis elements first, then a
    deterministic seeded grid of small rational combinations."""
    if M.dims != N.dims:
        return False
    if M.total_dim() == 0:
        return True
    h = hom(M, N)
    if h.dim == 0:
        return False

    def invertible(g: ModuleMap) -> bool:
        for v in range(1, len(M.dims) + 1):
            m = g.mat(v)
            if m and linalg.rank(m) != len(m):
                return False
        return True

    for g in h.basis:
        if invertible(g):
            return True
    rng = random.Random(12345)
    for _ in range(samples):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(h.dim)]
        if invertible(h.combo(coeffs)):
            return True
    return False
