from fractions import Fraction

import pytest

from ncdeform.ncpoly import (Arrow, NCPoly, Path, Quiver,
                             complete_rewrite_system,
                             enumerate_normal_words, growth_report, multiply,
                             normal_form)


def loop_quiver(*names):
    return Quiver(1, tuple(Arrow(n, 1, 1) for n in names))


def word(q, *arrows):
    return NCPoly.path(q, Path(1, arrows))


@pytest.fixture
def dw_rewrite():
    q = loop_quiver("x", "y")
    rels = [word(q, "x", "y") + word(q, "y", "x"),
            word(q, "x", "x") - word(q, "y", "y", "y")]
    return q, complete_rewrite_system(rels, 12)


def test_completion_produces_the_expected_rules(dw_rewrite):
    q, rs = dw_rewrite
    assert rs.saturated
    leads = sorted(r.lead.arrows for r in rs.rules)
    assert leads == [("x", "x", "x"), ("x", "y"), ("y", "y", "y")]


def test_normal_forms_respect_the_ideal(dw_rewrite):
    q, rs = dw_rewrite
    y3 = word(q, "y", "y", "y")
    assert normal_form(y3, rs) == word(q, "x", "x")
    assert normal_form(word(q, "y", "y", "y", "x"), rs).is_zero()
    assert normal_form(word(q, "x", "x", "x"), rs).is_zero()


def test_growth_finite_with_exact_basis(dw_rewrite):
    q, rs = dw_rewrite
    gr = growth_report(rs)
    assert gr.kind == "finite"
    assert gr.dim == 9
    words = {p.arrows for p in gr.basis}
    assert words == {(), ("y",), ("y", "y"), ("x",), ("y", "x"),
                     ("y", "y", "x"), ("x", "x"), ("y", "x", "x"),
                     ("y", "y", "x", "x")}


def test_growth_infinite_on_the_commutator_quotient():
    q = loop_quiver("x", "y")
    rs = complete_rewrite_system(
        [word(q, "x", "y") - word(q, "y", "x")], 8)
    assert growth_report(rs).kind == "infinite"


def test_growth_on_one_loop():
    q = loop_quiver("x")
    free = complete_rewrite_system([], 8, quiver=q)
    assert growth_report(free).kind == "infinite"
    nil = complete_rewrite_system([word(q, "x", "x")], 8)
    gr = growth_report(nil)
    assert (gr.kind, gr.dim) == ("finite", 2)


def test_multiply_is_bilinear_concatenation():
    q = Quiver(2, (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    a = NCPoly.path(q, Path(1, ("a",)))
    b = NCPoly.path(q, Path(2, ("b",)))
    ab = multiply(a, b)
    assert ab == NCPoly.path(q, Path(1, ("a", "b")))
    # non-composable products vanish
    assert multiply(a, a).is_zero()
    e2 = NCPoly.idempotent(q, 2)
    assert multiply(a, e2) == a
    assert multiply(e2, a).is_zero()


def test_normal_word_levels_are_sorted_and_complete():
    q = loop_quiver("x", "y")
    rs = complete_rewrite_system([word(q, "x", "x")], 8)
    levels = enumerate_normal_words(rs, 3)
    assert [len(lvl) for lvl in levels] == [1, 2, 3, 5]
    for lvl in levels:
        assert lvl == sorted(lvl, key=rs.order.key)


def test_relations_must_be_parallel():
    q = Quiver(2, (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    mixed = NCPoly.path(q, Path(1, ("a", "b"))) + \
        NCPoly.path(q, Path(2, ("b", "a")))
    with pytest.raises(ValueError):
        complete_rewrite_system([mixed], 8)


def test_precedence_changes_the_leading_terms():
    q = loop_quiver("x", "y")
    rel = word(q, "x", "y") - word(q, "y", "x")
    rs_xy = complete_rewrite_system([rel], 6, precedence=["x", "y"])
    rs_yx = complete_rewrite_system([rel], 6, precedence=["y", "x"])
    lead_xy = {r.lead.arrows for r in rs_xy.rules}
    lead_yx = {r.lead.arrows for r in rs_yx.rules}
    assert lead_xy != lead_yx


def test_coefficients_stay_exact():
    q = loop_quiver("x")
    rel = word(q, "x", "x").scale(Fraction(2, 3)) - word(q, "x")
    # degree-1 tails are legal for raw rewriting; the lead is x*x
    rs = complete_rewrite_system([rel], 6)
    nf = normal_form(word(q, "x", "x"), rs)
    assert nf == word(q, "x").scale(Fraction(3, 2))
