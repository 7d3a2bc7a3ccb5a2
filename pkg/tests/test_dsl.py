import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorlab.dsl import (Bind, Call, DslSyntaxError, DslTypeError, EvaluationError, Int,
                           ListExpr, ZQRing, evaluate, infer, parse, parse_element, render)
from factorlab.rings import build_zmod

ints = st.integers(min_value=0, max_value=99).map(Int)
int_lists = st.lists(ints, max_size=4).map(lambda xs: ListExpr(tuple(xs)))
sets = st.one_of(
    st.sampled_from(["units", "all", "satX"]).map(Call),
    st.builds(lambda n, xs: Call(n, tuple(xs)), st.sampled_from(["sat", "members"]),
              st.lists(ints, max_size=3)),
)


def _rings():
    base = st.one_of(
        st.builds(lambda n: Call("zmod", (n,)), ints),
        st.builds(lambda n: Call("gf", (n,)), ints),
        st.builds(lambda p, f: Call("gfquot", (p, f)), ints, int_lists),
        st.builds(lambda a, b, d: Call("axb", (Call("gf", (a,)), Call("gf", (b,))),
                                       (("deg", d),)), ints, ints, ints),
        st.builds(lambda h: Call("axb", (Call("Z"), Call("Q")), (("height", h),)), ints),
        st.builds(lambda q: Call("laurent", (Call("gf", (q,)),)), ints),
    )
    return st.recursive(base, lambda inner: st.one_of(
        st.builds(lambda a, b: Call("product", (a, b)), inner, inner),
        st.builds(lambda r, s: Call("localize", (r, s)), inner, sets),
    ), max_leaves=6)


rings = _rings()
modules = st.recursive(
    st.one_of(st.just(Call("regular")), st.builds(lambda n: Call("zmod_over", (n,)), ints)),
    lambda inner: st.one_of(
        st.builds(lambda m, xs: Call("quotient", (m, xs)), inner, int_lists),
        st.builds(lambda a, b: Call("product", (a, b)), inner, inner)),
    max_leaves=4)
tops = st.one_of(rings, st.builds(Bind, modules, rings), st.builds(Bind, sets, rings))


@settings(max_examples=300, deadline=None)
@given(tops)
def test_render_parse_round_trip(ast):
    assert parse(render(ast)) == ast


@given(tops)
def test_round_trip_is_whitespace_insensitive(ast):
    text = render(ast)
    assert parse("  " + text.replace(",", " ,\n ").replace("(", " ( ") + " ") == ast


def test_examples():
    assert infer(parse("zmod(6)")) == "ring"
    node = parse("sat(2) @ zmod(6)")
    assert isinstance(node, Bind) and infer(node) == "set"
    assert infer(parse("axb(gf(2),gf(4),deg=4)")) == "ring"


def test_syntax_error_span_and_expected():
    with pytest.raises(DslSyntaxError) as e:
        parse("zmod(6")
    assert e.value.span[0] == 6
    assert "')'" in e.value.expected


def test_span_is_byte_offset():
    with pytest.raises(DslSyntaxError) as e:
        parse("zmod(ω)")
    assert e.value.span == (5, 7)


def test_type_errors():
    with pytest.raises(DslTypeError):
        parse("sat(2) @ regular")
    with pytest.raises(DslTypeError):
        parse("product(zmod(2), regular)")
    with pytest.raises(DslTypeError) as e:
        parse("frob(3)")
    assert "zmod" in e.value.expected
    with pytest.raises(DslTypeError):
        parse("axb(Z, Q, deg=3)")


def test_keyword_order():
    with pytest.raises(DslSyntaxError):
        parse("axb(gf(2), deg=3, gf(4))")


def test_evaluate():
    R = evaluate("zmod(6)")
    assert R.size == 6
    assert evaluate("sat(2) @ zmod(6)").members == {1, 2, 4, 5}
    assert evaluate("quotient(regular, [3]) @ zmod(6)").size == 3
    assert evaluate("localize(zmod(6), sat(2))").size == 3
    assert evaluate("axb(gf(2), gf(4))", deg=2).size == 2 * 16


def test_evaluate_errors():
    with pytest.raises(EvaluationError):
        evaluate("zmod(1)")
    with pytest.raises(EvaluationError):
        evaluate("gf(6)")
    with pytest.raises(EvaluationError):
        evaluate("members(2) @ zmod(6)")


def test_zq_is_witness_only():
    R = evaluate("axb(Z, Q, height=16)")
    assert isinstance(R, ZQRing) and R.height == 16


def test_parse_element():
    R = build_zmod(6)
    assert parse_element("4", R) == 4
    with pytest.raises(DslTypeError):
        parse_element("6", R)
