"""Command-line surface: flat-file algebra/module formats and the
deterministic line-oriented reports.

Exit codes: 0 success, 1 check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from fractions import Fraction

from .algebra import (AdmissibilityError, AlgebraPresentation,
                      TruncatedAlgebra, truncate)
from .contract import (ContractionSpec, contract, contraction_finiteness,
                       contraction_vs_deformation, opposite_symmetry_check)
from .deform import (NotSimpleCollection, check_simple_collection,
                     deform_versal, iterated_extension_dim_audit)
from .deform import recovery_check as _recovery_check
from .ncpoly import NCPoly, Path, Quiver, Arrow
from .repmod import (ModuleError, RepModule, TruncationOverflow, ext1, hom,
                     projective, projectives, simples)


class ParseError(ValueError):
    """Syntax or semantic error in an input file, with a position."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_IDEMPOTENT_RE = re.compile(r"e[0-9]+\Z")
_POLY_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[0-9]+|[+\-*/])")


def _tokenize_poly(text: str, line_no: int) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if not m:
            raise ParseError(line_no,
                             f"unexpected character {text[pos:].lstrip()[0]!r} "
                             "in polynomial")
        out.append(m.group(1))
        pos = m.end()
    return out


class _PolyParser:
    """POLY := term (('+'|'-') term)*; term := [RAT '*'] path;
    path := atom ('*' atom)*; atom := NAME | 'e' INT; RAT := INT ['/' INT]"""

    def __init__(self, tokens: list[str], quiver: Quiver, line_no: int):
        self.toks = tokens
        self.pos = 0
        self.quiver = quiver
        self.line_no = line_no
        self.arrow_names = {a.name for a in quiver.arrows}

    def error(self, msg: str):
        raise ParseError(self.line_no, msg)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            self.error("unexpected end of polynomial")
        self.pos += 1
        return t

    def parse(self) -> NCPoly:
        terms: dict[Path, Fraction] = {}
        sign = Fraction(1)
        if self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = Fraction(-1)
        while True:
            p, c = self.term()
            terms[p] = terms.get(p, Fraction(0)) + sign * c
            nxt = self.peek()
            if nxt is None:
                break
            if nxt not in ("+", "-"):
                self.error(f"expected '+' or '-', got {nxt!r}")
            sign = Fraction(1) if self.take() == "+" else Fraction(-1)
        return NCPoly.from_dict(self.quiver, terms)

    def term(self) -> tuple[Path, Fraction]:
        coeff = Fraction(1)
        if self.peek() is not None and self.peek().isdigit():
            num = int(self.take())
            den = 1
            if self.peek() == "/":
                self.take()
                d = self.take()
                if not d.isdigit():
                    self.error(f"expected denominator, got {d!r}")
                den = int(d)
                if den == 0:
                    self.error("zero denominator")
            coeff = Fraction(num, den)
            if self.peek() != "*":
                self.error("expected '*' after coefficient")
            self.take()
        atoms = [self.atom()]
        while self.peek() == "*":
            self.take()
            atoms.append(self.atom())
        path = self.join_atoms(atoms)
        return path, coeff

    def atom(self):
        t = self.take()
        if t in ("+", "-", "*", "/") or t.isdigit():
            self.error(f"expected arrow name or idempotent, got {t!r}")
        if _IDEMPOTENT_RE.fullmatch(t):
            v = int(t[1:])
            if not 1 <= v <= self.quiver.vertex_count:
                self.error(f"idempotent {t} out of range")
            return ("e", v)
        if t not in self.arrow_names:
            self.error(f"unknown arrow {t}")
        return ("a", t)

    def join_atoms(self, atoms) -> Path:
        start = None
        arrows: list[str] = []
        cur = None
        for kind, val in atoms:
            if kind == "e":
                if cur is not None and cur != val:
                    self.error("non-composable product of idempotents/arrows")
                cur = val
                if start is None:
                    start = val
            else:
                a = self.quiver.arrow(val)
                if cur is not None and cur != a.source:
                    self.error(f"non-composable product at arrow {val}")
                if start is None:
                    start = a.source
                arrows.append(val)
                cur = a.target
        return Path(start, tuple(arrows))


def parse_algebra(text: str) -> AlgebraPresentation:
    vertices = None
    arrows: list[Arrow] = []
    relation_lines: list[tuple[int, str]] = []
    trunc = 10
    seen_names: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if kw == "vertices":
            if vertices is not None:
                raise ParseError(line_no, "duplicate 'vertices' declaration")
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(line_no, f"bad vertex count {rest!r}")
            vertices = int(rest)
        elif kw == "arrow":
            fields = rest.split()
            if len(fields) != 3:
                raise ParseError(line_no, "expected: arrow NAME INT INT")
            name, s, t = fields
            if not _NAME_RE.fullmatch(name):
                raise ParseError(line_no, f"bad arrow name {name!r}")
            if _IDEMPOTENT_RE.fullmatch(name):
                raise ParseError(
                    line_no, f"arrow name {name!r} collides with the "
                    "idempotent notation e<INT>")
            if name in seen_names:
                raise ParseError(line_no, f"duplicate arrow name {name}")
            if not (s.isdigit() and t.isdigit()):
                raise ParseError(line_no, "arrow endpoints must be integers")
            seen_names.add(name)
            arrows.append(Arrow(name, int(s), int(t)))
        elif kw == "relation":
            relation_lines.append((line_no, rest))
        elif kw == "truncate":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(line_no, f"bad truncation degree {rest!r}")
            trunc = int(rest)
        else:
            raise ParseError(line_no, f"unknown declaration {kw!r}")
    if vertices is None:
        raise ParseError(1, "missing 'vertices' declaration")
    try:
        quiver = Quiver(vertices, tuple(arrows))
    except ValueError as exc:
        raise ParseError(1, str(exc))
    relations = []
    for line_no, body in relation_lines:
        toks = _tokenize_poly(body, line_no)
        if not toks:
            raise ParseError(line_no, "empty relation")
        poly = _PolyParser(toks, quiver, line_no).parse()
        relations.append(poly)
    pres = AlgebraPresentation(quiver, tuple(relations), trunc)
    try:
        pres.validate()
    except AdmissibilityError as exc:
        raise ParseError(1, str(exc))
    return pres


def format_poly(poly: NCPoly) -> str:
    if poly.is_zero():
        return "0"
    pieces = []
    for k, (p, c) in enumerate(poly.terms):
        word = p.format()
        mag = abs(c)
        body = word if mag == 1 else f"{mag}*{word}"
        if k == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


def print_algebra(pres: AlgebraPresentation) -> str:
    lines = [f"vertices {pres.quiver.vertex_count}"]
    for a in pres.quiver.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}")
    for rel in pres.relations:
        lines.append(f"relation {format_poly(rel)}")
    lines.append(f"truncate {pres.truncation_degree}")
    return "\n".join(lines) + "\n"


def _parse_rat(tok: str, line_no: int) -> Fraction:
    m = re.fullmatch(r"(-?[0-9]+)(?:/([0-9]+))?", tok)
    if not m:
        raise ParseError(line_no, f"bad rational {tok!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(line_no, "zero denominator")
    return Fraction(num, den)


def parse_module(text: str, alg: TruncatedAlgebra) -> RepModule:
    """`dim INT...` once, then `mat NAME row ; row ; ...` per arrow."""
    dims = None
    mats: dict[str, list[list[Fraction]]] = {}
    r = alg.quiver.vertex_count
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if kw == "dim":
            fields = rest.split()
            if len(fields) != r or not all(f.isdigit() for f in fields):
                raise ParseError(line_no,
                                 f"expected {r} nonnegative dims")
            dims = [int(f) for f in fields]
        elif kw == "mat":
            fields = rest.split(None, 1)
            if not fields:
                raise ParseError(line_no, "expected: mat NAME rows")
            name = fields[0]
            try:
                arrow = alg.quiver.arrow(name)
            except Exception:
                raise ParseError(line_no, f"unknown arrow {name}")
            body = fields[1] if len(fields) > 1 else ""
            rows = []
            for chunk in body.split(";"):
                entries = chunk.split()
                if entries:
                    rows.append([_parse_rat(t, line_no) for t in entries])
            mats[name] = rows
        else:
            raise ParseError(line_no, f"unknown declaration {kw!r}")
    if dims is None:
        raise ParseError(1, "missing 'dim' declaration")
    action = {}
    for a in alg.quiver.arrows:
        want = (dims[a.source - 1], dims[a.target - 1])
        rows = mats.get(a.name)
        if rows is None:
            rows = [[Fraction(0)] * want[1] for _ in range(want[0])]
        if len(rows) != want[0] or any(len(rw) != want[1] for rw in rows):
            raise ParseError(
                1, f"matrix for {a.name} must be {want[0]}x{want[1]}")
        action[a.name] = rows
    try:
        return RepModule.make(alg, dims, action)
    except (ModuleError, TruncationOverflow) as exc:
        raise ParseError(1, str(exc))


# ---------------------------------------------------------------------------
# commands


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}")
    pres = parse_algebra(data.decode("utf-8"))
    return pres, data


def _resolve_module(token: str, alg: TruncatedAlgebra) -> RepModule:
    m = re.fullmatch(r"S([0-9]+)", token)
    if m:
        v = int(m.group(1))
        if not 1 <= v <= alg.quiver.vertex_count:
            raise ParseError(0, f"vertex {v} out of range in {token}")
        return simples(alg)[v - 1]
    m = re.fullmatch(r"P([0-9]+)", token)
    if m:
        v = int(m.group(1))
        if not 1 <= v <= alg.quiver.vertex_count:
            raise ParseError(0, f"vertex {v} out of range in {token}")
        return projective(alg, v)
    try:
        with open(token, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {token}: {exc.strerror}")
    return parse_module(data.decode("utf-8"), alg)


def _fmt_vec(vals) -> str:
    return ",".join(str(v) for v in vals)


def cmd_basis(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    out.append(f"dim={alg.dim}")
    for k, p in enumerate(alg.basis):
        out.append(f"b{k}={p.format()}")
    return 0


def cmd_simples(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    for v, s in enumerate(simples(alg), start=1):
        out.append(f"S{v} dims={_fmt_vec(s.dims)}")
    return 0


def cmd_projectives(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    for v, p in enumerate(projectives(alg), start=1):
        out.append(f"P{v} dims={_fmt_vec(p.dims)} total={p.total_dim()}")
    return 0


def cmd_hom(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    A = _resolve_module(args.modA, alg)
    B = _resolve_module(args.modB, alg)
    hs = hom(A, B)
    out.append(f"hom_dim={hs.dim}")
    return 0


def cmd_ext(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    A = _resolve_module(args.modA, alg)
    B = _resolve_module(args.modB, alg)
    es = ext1(A, B)
    out.append(f"ext_dim={es.dim}")
    return 0


def cmd_deform(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    S = simples(alg)
    if args.collection:
        try:
            verts = [int(v) for v in args.collection.split(",") if v]
        except ValueError:
            raise ParseError(0, f"bad --collection {args.collection!r}")
        for v in verts:
            if not 1 <= v <= alg.quiver.vertex_count:
                raise ParseError(0, f"vertex {v} out of range")
        chosen = [S[v - 1] for v in verts]
    else:
        chosen = S
    coll = check_simple_collection(chosen)
    state, pa, converged = deform_versal(coll, args.max_stage)
    audit = iterated_extension_dim_audit(state, pa)
    out.append(f"converged={'true' if converged else 'false'} "
               f"stages={state.stage} param_dim={pa.dim} "
               f"audit_r_plus_N={'pass' if audit else 'fail'}")
    out.append(f"layers={_fmt_vec(pa.layer_dims())}")
    return 0 if audit else 1


def cmd_recover(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    alg = truncate(pres)
    report = _recovery_check(alg, args.max_stage)
    out.extend(report.lines())
    S = simples(alg)
    coll = check_simple_collection(S)
    state, pa, _ = deform_versal(coll, args.max_stage)
    verdict = "pass" if report.passed else "fail"
    out.append(f"{verdict} param_dim={pa.dim} "
               f"layers={_fmt_vec(pa.layer_dims())}")
    return 0 if report.passed else 1


def cmd_contract(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    try:
        verts = frozenset(int(v) for v in args.vertices.split(",") if v)
    except ValueError:
        raise ParseError(0, f"bad --vertices {args.vertices!r}")
    try:
        spec = ContractionSpec(pres, verts)
    except ValueError as exc:
        raise ParseError(0, str(exc))
    alg, cpres = contract(spec)
    out.append(f"contract_dim={alg.dim} "
               f"layers={_fmt_vec(alg.layer_dims())}")
    code = 0
    if args.compare_deform:
        report = contraction_vs_deformation(spec, args.max_stage)
        out.extend(report.lines())
        if not report.passed:
            code = 1
    if args.check_opposite:
        report = opposite_symmetry_check(spec)
        out.extend(report.lines())
        if not report.passed:
            code = 1
    return code


def cmd_findim(args, out: list[str]) -> int:
    pres, _ = _load(args.file)
    spec = ContractionSpec(pres, frozenset())
    gr = contraction_finiteness(spec, args.bound)
    if gr.kind == "finite":
        out.append(f"result=finite dim={gr.dim}")
    else:
        out.append(f"result={gr.kind}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncdeform",
        description="Noncommutative deformation calculator for quiver "
                    "algebra presentations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.set_defaults(fn=fn)
        return p

    add("basis", cmd_basis)
    add("simples", cmd_simples)
    add("projectives", cmd_projectives)
    p = add("hom", cmd_hom)
    p.add_argument("modA")
    p.add_argument("modB")
    p = add("ext", cmd_ext)
    p.add_argument("modA")
    p.add_argument("modB")
    p = add("deform", cmd_deform)
    p.add_argument("--collection", default="")
    p.add_argument("--max-stage", type=int, default=50)
    p = add("recover", cmd_recover)
    p.add_argument("--max-stage", type=int, default=50)
    p = add("contract", cmd_contract)
    p.add_argument("--vertices", required=True)
    p.add_argument("--compare-deform", action="store_true")
    p.add_argument("--check-opposite", action="store_true")
    p.add_argument("--max-stage", type=int, default=50)
    p = add("findim", cmd_findim)
    p.add_argument("--bound", type=int, default=12)
    return ap


def run_command(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    out: list[str] = []
    out.append("command=" + " ".join(argv))
    try:
        with open(args.file, "rb") as fh:
            out.append(f"input=sha256:{_digest(fh.read())}")
    except OSError:
        pass
    try:
        code = args.fn(args, out)
    except ParseError as exc:
        print("\n".join(out))
        print(f"error={exc}", file=sys.stderr)
        return 2
    except TruncationOverflow as exc:
        print("\n".join(out))
        print(f"error={exc} (raise the 'truncate' degree in the algebra "
              "file)", file=sys.stderr)
        return 2
    except NotSimpleCollection as exc:
        print("\n".join(out))
        print(f"error={exc}", file=sys.stderr)
        return 2
    print("\n".join(out))
    return code


def main() -> int:
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
