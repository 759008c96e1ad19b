"""Paths, noncommutative polynomials and degree-bounded two-sided rewriting.

Coefficients are exact rationals.  The term order is degree-lexicographic
with a declared arrow precedence, so reduction never raises degree and
truncated completion is sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional


class ParallelityError(ValueError):
    """A relation mixes paths with different endpoints."""


class TruncationExceeded(RuntimeError):
    """A normal form was requested beyond the confirmed-confluent degree."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        for a in self.arrows:
            if not (1 <= a.source <= self.vertex_count and
                    1 <= a.target <= self.vertex_count):
                raise ValueError(f"arrow {a.name}: vertex out of range")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name!r}")

    @property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}


@dataclass(frozen=True)
class Path:
    """A directed path, composed left to right; the empty path at v is e_v."""
    start: int
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def end(self, quiver: Quiver) -> int:
        if not self.arrows:
            return self.start
        return quiver.arrow(self.arrows[-1]).target

    def check(self, quiver: Quiver):
        amap = quiver.arrow_map
        v = self.start
        if not (1 <= v <= quiver.vertex_count):
            raise ValueError("path start out of range")
        for name in self.arrows:
            a = amap[name]
            if a.source != v:
                raise ValueError(f"non-composable path at arrow {name}")
            v = a.target

    def concat(self, other: "Path", quiver: Quiver) -> Optional["Path"]:
        if self.end(quiver) != other.start:
            return None
        return Path(self.start, self.arrows + other.arrows)

    def format(self) -> str:
        if not self.arrows:
            return f"e{self.start}"
        return "*".join(self.arrows)


class TermOrder:
    """Degree-lexicographic order; earlier arrows in the precedence list
    are larger.  Parallel-path comparisons never need the start vertex,
    but it is included so the order is total on all paths."""

    def __init__(self, quiver: Quiver, precedence: Optional[list[str]] = None):
        self.quiver = quiver
        if precedence is None:
            precedence = [a.name for a in quiver.arrows]
        if sorted(precedence) != sorted(a.name for a in quiver.arrows):
            raise ValueError("precedence must list every arrow exactly once")
        self.precedence = list(precedence)
        self._rank = {name: i for i, name in enumerate(precedence)}

    def key(self, p: Path):
        return (len(p.arrows), tuple(-self._rank[a] for a in p.arrows), -p.start)

    def sort_terms(self, terms: Iterable[Path]) -> list[Path]:
        return sorted(terms, key=self.key, reverse=True)


@dataclass(frozen=True)
class NCPoly:
    """Finite rational combination of paths of one quiver."""
    quiver: Quiver
    terms: tuple[tuple[Path, Fraction], ...]

    @staticmethod
    def from_dict(quiver: Quiver, d: dict[Path, Fraction]) -> "NCPoly":
        items = tuple(sorted(((p, c) for p, c in d.items() if c != 0),
                             key=lambda pc: (pc[0].start, pc[0].arrows)))
        return NCPoly(quiver, items)

    @staticmethod
    def zero(quiver: Quiver) -> "NCPoly":
        return NCPoly(quiver, ())

    @staticmethod
    def path(quiver: Quiver, p: Path, coeff=1) -> "NCPoly":
        p.check(quiver)
        return NCPoly.from_dict(quiver, {p: Fraction(coeff)})

    @staticmethod
    def idempotent(quiver: Quiver, v: int) -> "NCPoly":
        return NCPoly.path(quiver, Path(v))

    def as_dict(self) -> dict[Path, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(p) for p, _ in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((len(p) for p, _ in self.terms), default=-1)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        d = self.as_dict()
        for p, c in other.terms:
            d[p] = d.get(p, Fraction(0)) + c
        return NCPoly.from_dict(self.quiver, d)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        return NCPoly.from_dict(self.quiver, {p: c * x for p, x in self.terms})

    def __neg__(self) -> "NCPoly":
        return self.scale(-1)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.terms:
            s = p.format()
            if c == 1:
                parts.append(s)
            elif c == -1:
                parts.append(f"-{s}" if not parts else f"- {s}")
                continue
            else:
                parts.append(f"{c}*{s}")
        out = ""
        for i, (p, c) in enumerate(self.terms):
            body = p.format() if abs(c) == 1 else f"{abs(c)}*{p.format()}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    """Bilinear extension of path concatenation; non-composable products
    vanish."""
    if p.quiver is not q.quiver and p.quiver != q.quiver:
        raise ValueError("operands over different quivers")
    quiver = p.quiver
    d: dict[Path, Fraction] = {}
    for a, ca in p.terms:
        for b, cb in q.terms:
            ab = a.concat(b, quiver)
            if ab is not None:
                d[ab] = d.get(ab, Fraction(0)) + ca * cb
    return NCPoly.from_dict(quiver, d)


# ---------------------------------------------------------------------------
# rewriting


@dataclass(frozen=True)
class Rule:
    """lead -> tail, with every tail term strictly smaller than lead."""
    lead: Path
    tail: NCPoly


@dataclass
class RewriteSystem:
    quiver: Quiver
    order: TermOrder
    rules: list[Rule]
    degree_bound: int
    complete_below: int
    saturated: bool = False

    def rule_leads(self) -> list[Path]:
        return [r.lead for r in self.rules]


def _find_reduction(word: tuple[str, ...], rules: list[Rule]):
    """First (rule index, position) whose lead occurs as a subword."""
    for i, r in enumerate(rules):
        lw = r.lead.arrows
        ll = len(lw)
        if ll == 0 or ll > len(word):
            continue
        for pos in range(len(word) - ll + 1):
            if word[pos:pos + ll] == lw:
                return i, pos
    return None


def _reduce_terms(quiver: Quiver, order: TermOrder,
                  terms: dict[Path, Fraction], rules: list[Rule],
                  drop_degree: Optional[int] = None) -> dict[Path, Fraction]:
    """Full reduction by `rules`; terms of degree >= drop_degree (if given)
    are discarded.  Deterministic: always rewrites the largest reducible
    term, so the loop strictly decreases in the term order."""
    work = {p: c for p, c in terms.items() if c != 0}
    if drop_degree is not None:
        work = {p: c for p, c in work.items() if len(p) < drop_degree}
    done: dict[Path, Fraction] = {}
    while work:
        p = max(work, key=order.key)
        c = work.pop(p)
        hit = _find_reduction(p.arrows, rules)
        if hit is None:
            done[p] = done.get(p, Fraction(0)) + c
            if done[p] == 0:
                del done[p]
            continue
        i, pos = hit
        rule = rules[i]
        ll = len(rule.lead.arrows)
        left = Path(p.start, p.arrows[:pos])
        for t, ct in rule.tail.terms:
            new = left.arrows + t.arrows + p.arrows[pos + ll:]
            np = Path(p.start, new)
            if drop_degree is not None and len(np) >= drop_degree:
                continue
            coeff = c * ct
            work[np] = work.get(np, Fraction(0)) + coeff
            if work[np] == 0:
                del work[np]
    return done


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    """Canonical representative modulo the ideal, within the confirmed
    degree range."""
    if not rs.saturated and p.degree() > rs.complete_below:
        raise TruncationExceeded(
            f"degree {p.degree()} exceeds confirmed-confluent degree "
            f"{rs.complete_below}; raise the completion bound")
    return NCPoly.from_dict(
        p.quiver, _reduce_terms(p.quiver, rs.order, p.as_dict(), rs.rules))


def _check_parallel(rel: NCPoly, quiver: Quiver):
    ends = {(p.start, p.end(quiver)) for p, _ in rel.terms}
    if len(ends) > 1:
        raise ParallelityError(
            f"relation {rel.format()} mixes non-parallel paths: {sorted(ends)}")


def _make_rule(order: TermOrder, terms: dict[Path, Fraction]) -> Rule:
    lead = max(terms, key=order.key)
    if len(lead) == 0:
        raise ValueError("ideal contains a vertex idempotent; "
                         "presentation is not admissible")
    c = terms[lead]
    tail = {p: -x / c for p, x in terms.items() if p != lead}
    return Rule(lead, NCPoly.from_dict(order.quiver, tail))


def _overlaps(r1: Rule, r2: Rule):
    """Proper overlap words: a suffix of r1.lead equals a prefix of r2.lead.
    Yields (word Path, split) with r1 applying at position 0 and r2 at
    position len(lead1) - split."""
    w1, w2 = r1.lead.arrows, r2.lead.arrows
    for k in range(1, min(len(w1), len(w2))):
        if w1[-k:] == w2[:k]:
            yield Path(r1.lead.start, w1 + w2[k:]), k


def _complete(quiver: Quiver, order: TermOrder,
              polys: list[NCPoly], degree_bound: int,
              drop_degree: Optional[int] = None) -> tuple[list[Rule], bool]:
    """Knuth-Bendix style completion of a two-sided ideal, resolving all
    overlaps whose overlap word has degree <= degree_bound.  Returns the
    interreduced rule list and whether no overlap was skipped."""
    by_id: dict[int, Rule] = {}
    next_id = 0
    saturated = True
    pending: list[dict[Path, Fraction]] = [p.as_dict() for p in polys]
    pairs: list[tuple[int, int]] = []

    def active_rules() -> list[Rule]:
        return [by_id[i] for i in sorted(by_id)]

    while pending or pairs:
        while pending:
            terms = pending.pop(0)
            rules = active_rules()
            red = _reduce_terms(quiver, order, terms, rules, drop_degree)
            if not red:
                continue
            rule = _make_rule(order, red)
            # retire rules whose lead the new rule reduces; re-queue them
            for rid in sorted(by_id):
                r = by_id[rid]
                if _find_reduction(r.lead.arrows, [rule]) is not None:
                    t = {r.lead: Fraction(1)}
                    for p, c in r.tail.terms:
                        t[p] = t.get(p, Fraction(0)) - c
                    pending.append(t)
                    del by_id[rid]
            nonlocal_id = next_id
            by_id[nonlocal_id] = rule
            next_id += 1
            for other in sorted(by_id):
                pairs.append((other, nonlocal_id))
                if other != nonlocal_id:
                    pairs.append((nonlocal_id, other))
        if not pairs:
            break
        i, j = pairs.pop(0)
        if i not in by_id or j not in by_id:
            continue
        r1, r2 = by_id[i], by_id[j]
        if r1.tail.is_zero() and r2.tail.is_zero():
            continue  # monomial-monomial overlaps resolve trivially
        for word, k in _overlaps(r1, r2):
            if len(word) > degree_bound:
                saturated = False
                continue
            # S-polynomial: the two one-step reductions of the overlap word
            l1 = len(r1.lead.arrows)
            left1 = multiply(r1.tail,
                             NCPoly.path(quiver, Path(r1.lead.end(quiver),
                                                      word.arrows[l1:])))
            pre = Path(word.start, word.arrows[:l1 - k])
            left2 = multiply(NCPoly.path(quiver, pre), r2.tail)
            s = left1 - left2
            red = _reduce_terms(quiver, order, s.as_dict(), active_rules(),
                                drop_degree)
            if red:
                pending.append(red)
    rules = active_rules()
    # interreduce tails against the final rule set
    final = []
    for r in rules:
        others = [s for s in rules if s is not r]
        tail = _reduce_terms(quiver, order, r.tail.as_dict(), others,
                             drop_degree)
        final.append(Rule(r.lead, NCPoly.from_dict(quiver, tail)))
    final.sort(key=lambda r: order.key(r.lead))
    return final, saturated


def complete_rewrite_system(relations: list[NCPoly], degree_bound: int,
                            quiver: Optional[Quiver] = None,
                            precedence: Optional[list[str]] = None
                            ) -> RewriteSystem:
    """Degree-bounded completion of the two-sided ideal the relations
    generate.  All overlaps of degree <= degree_bound are resolved;
    `saturated` records whether none had to be skipped (in which case the
    rule set is a full Groebner basis)."""
    if quiver is None:
        if not relations:
            raise ValueError("pass quiver= explicitly for empty relation lists")
        quiver = relations[0].quiver
    for rel in relations:
        _check_parallel(rel, quiver)
        if not rel.is_zero() and rel.degree() > degree_bound:
            raise ValueError("degree_bound below a relation degree")
    order = TermOrder(quiver, precedence)
    rules, saturated = _complete(quiver, order,
                                 [r for r in relations if not r.is_zero()],
                                 degree_bound)
    return RewriteSystem(quiver, order, rules, degree_bound,
                         complete_below=degree_bound, saturated=saturated)


# ---------------------------------------------------------------------------
# normal words and growth


def _is_normal(word: tuple[str, ...], leads: list[tuple[str, ...]]) -> bool:
    return all(not _contains(word, lw) for lw in leads)


def _contains(word: tuple[str, ...], sub: tuple[str, ...]) -> bool:
    ls = len(sub)
    if ls == 0 or ls > len(word):
        return False
    return any(word[i:i + ls] == sub for i in range(len(word) - ls + 1))


def enumerate_normal_words(rs: RewriteSystem, max_degree: int) -> list[list[Path]]:
    """Normal words grouped by degree 0..max_degree, each level sorted by
    the term order."""
    quiver = rs.quiver
    leads = [r.lead.arrows for r in rs.rules]
    arrows_from: dict[int, list[Arrow]] = {v: [] for v in range(1, quiver.vertex_count + 1)}
    for a in quiver.arrows:
        arrows_from[a.source].append(a)
    levels: list[list[Path]] = [[Path(v) for v in range(1, quiver.vertex_count + 1)]]
    for d in range(1, max_degree + 1):
        nxt = []
        for p in levels[-1]:
            for a in arrows_from[p.end(quiver)]:
                w = p.arrows + (a.name,)
                # only the new suffix can create an obstruction
                if all(not (len(lw) <= len(w) and w[-len(lw):] == lw)
                       for lw in leads):
                    nxt.append(Path(p.start, w))
        nxt.sort(key=rs.order.key)
        levels.append(nxt)
        if not nxt:
            break
    return levels


@dataclass(frozen=True)
class GrowthReport:
    kind: str                     # "finite" | "infinite" | "unknown"
    dim: Optional[int] = None
    basis: tuple[Path, ...] = ()


def growth_report(rs: RewriteSystem) -> GrowthReport:
    """Decide finite-dimensionality of the quotient by normal-word growth.

    Finite verdicts come with the full normal-word basis.  Infinite is
    only certified when the rewrite system is a full Groebner basis
    (saturated), via a cycle in the graph of normal words; otherwise the
    honest answer is Unknown.
    """
    levels = enumerate_normal_words(rs, rs.complete_below)
    if not levels[-1]:
        basis = tuple(p for lvl in levels for p in lvl)
        return GrowthReport("finite", len(basis), basis)
    if not rs.saturated:
        return GrowthReport("unknown")
    # full Groebner basis: use the normal-word (Ufnarovski) graph
    quiver = rs.quiver
    leads = [r.lead.arrows for r in rs.rules]
    l = max((len(w) for w in leads), default=1)
    window = max(l - 1, 0)
    if window:
        win_levels = enumerate_normal_words(rs, window)
        nodes = win_levels[window] if len(win_levels) > window else []
    else:
        nodes = [Path(v) for v in range(1, quiver.vertex_count + 1)]
    arrows_from: dict[int, list[Arrow]] = {v: [] for v in range(1, quiver.vertex_count + 1)}
    for a in quiver.arrows:
        arrows_from[a.source].append(a)
    edges: dict[Path, list[Path]] = {}
    for u in nodes:
        outs = []
        for a in arrows_from[u.end(quiver)]:
            w = u.arrows + (a.name,)
            if _is_normal(w, leads):
                if window:
                    outs.append(Path(quiver.arrow(w[0]).target, w[1:]))
                else:
                    outs.append(Path(a.target))
        edges[u] = outs
    # cycle detection by iterative DFS coloring
    color = {u: 0 for u in nodes}
    for s in nodes:
        if color[s]:
            continue
        stack = [(s, iter(edges[s]))]
        color[s] = 1
        while stack:
            u, it = stack[-1]
            adv = next(it, None)
            if adv is None:
                color[u] = 2
                stack.pop()
            elif color.get(adv, 2) == 1:
                return GrowthReport("infinite")
            elif color.get(adv, 0) == 0:
                color[adv] = 1
                stack.append((adv, iter(edges[adv])))
    # acyclic: normal words have bounded length; enumerate them all
    bound = window + len(nodes) + 1
    levels = enumerate_normal_words(rs, bound)
    if levels[-1]:
        return GrowthReport("unknown")  # should not happen for acyclic graphs
    basis = tuple(p for lvl in levels for p in lvl)
    return GrowthReport("finite", len(basis), basis)


def all_paths_of_degree(quiver: Quiver, degree: int) -> list[Path]:
    out = [Path(v) for v in range(1, quiver.vertex_count + 1)]
    for _ in range(degree):
        nxt = []
        for p in out:
            for a in quiver.arrows:
                if a.source == p.end(quiver):
                    nxt.append(Path(p.start, p.arrows + (a.name,)))
        out = nxt
    return out
