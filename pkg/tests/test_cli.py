import io
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from ncdeform.cli import (ParseError, format_poly, parse_algebra,
                          parse_module, print_algebra, run_command)
from ncdeform.algebra import truncate
from conftest import CORPUS, corpus_path, corpus_text


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run_command(argv)
    return code, buf.getvalue()


def test_parse_dw():
    pres = parse_algebra(corpus_text("dw"))
    assert pres.quiver.vertex_count == 1
    assert [a.name for a in pres.quiver.arrows] == ["x", "y"]
    assert len(pres.relations) == 2
    assert pres.truncation_degree == 10


def test_parse_roundtrip_on_the_corpus():
    for name in CORPUS:
        pres = parse_algebra(corpus_text(name))
        again = parse_algebra(print_algebra(pres))
        assert again == pres, name


def test_rational_coefficients_roundtrip():
    text = "vertices 1\narrow x 1 1\nrelation 2/3*x*x - x*x*x\n"
    pres = parse_algebra(text)
    (rel,) = pres.relations
    coeffs = {p.arrows: c for p, c in rel.terms}
    assert coeffs[("x", "x")] == Fraction(2, 3)
    assert coeffs[("x", "x", "x")] == Fraction(-1)
    assert parse_algebra(print_algebra(pres)) == pres


def test_parse_errors_are_positioned():
    with pytest.raises(ParseError) as exc:
        parse_algebra("vertices 1\nrelation x*x\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(ParseError):
        parse_algebra("arrow a 1 2\n")   # missing vertices
    with pytest.raises(ParseError):
        parse_algebra("vertices 1\narrow e1 1 1\n")  # reserved name
    with pytest.raises(ParseError):
        parse_algebra("vertices 2\narrow a 1 2\nrelation a*a\n")


def test_module_file_parsing():
    alg = truncate(parse_algebra(corpus_text("a2")))
    mod = parse_module("dim 1 1\nmat a 1\n", alg)
    assert mod.dims == (1, 1)
    with pytest.raises(ParseError):
        parse_module("dim 1\n", alg)          # wrong arity
    with pytest.raises(ParseError):
        parse_module("dim 1 1\nmat z 1\n", alg)


def test_findim_command():
    code, out = run(["findim", corpus_path("dw"), "--bound", "8"])
    assert code == 0
    assert "result=finite dim=9" in out


def test_recover_command():
    code, out = run(["recover", corpus_path("a2")])
    assert code == 0
    assert "pass param_dim=3 layers=2,1" in out


def test_deform_command():
    code, out = run(["deform", corpus_path("kx3"), "--max-stage", "10"])
    assert code == 0
    assert "converged=true stages=2 param_dim=3 audit_r_plus_N=pass" in out


def test_deform_partial_collection():
    code, out = run(["deform", corpus_path("a2"), "--collection", "1"])
    assert code == 0
    assert "param_dim=1" in out


def test_hom_and_ext_shorthands():
    code, out = run(["hom", corpus_path("a2"), "P1", "S1"])
    assert code == 0 and "hom_dim=1" in out
    code, out = run(["ext", corpus_path("a2"), "S1", "S2"])
    assert code == 0 and "ext_dim=1" in out


def test_contract_command():
    code, out = run(["contract", corpus_path("a2"), "--vertices", "2",
                     "--compare-deform", "--check-opposite"])
    assert code == 0
    assert "contract_dim=1" in out
    assert "check.dim=pass" in out


def test_basis_lists_normal_words():
    code, out = run(["basis", corpus_path("kx3")])
    assert code == 0
    assert "dim=3" in out
    assert "b2=x*x" in out


def test_reports_carry_the_input_digest():
    _, out = run(["basis", corpus_path("kx3")])
    assert any(line.startswith("input=sha256:")
               for line in out.splitlines())


def test_exit_code_two_on_bad_input(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices 1\nrelation x*x\n")
    code, _ = run(["basis", str(bad)])
    assert code == 2
    code, _ = run(["basis", str(tmp_path / "missing.alg")])
    assert code == 2


def test_reports_are_deterministic():
    outs = {run(["recover", corpus_path("loop2")])[1] for _ in range(3)}
    assert len(outs) == 1
