import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patcalc.models.process import (
    Hole,
    Nil,
    Output,
    Par,
    Restrict,
    alpha_eq,
    alpha_normal,
    apply_subst_proc,
    bound_names_proc,
    conforms,
    fill,
    free_names_proc,
    holes,
    names_proc,
    output,
    par,
    rename,
)
from patcalc.models.term import Leaf, Substitution, as_substitution
from patcalc.syntax.parser import parse_process, parse_term
from patcalc.utils.errors import SubstitutionError
from patcalc.utils.witnesses import s3, s4
from tests.strategies import lang, processes


def proc(text):
    return parse_process(text, allow_reserved=True)


def features(text, code, strict_cond=True):
    return {v.feature for v in conforms(proc(text), lang(code), strict_cond)}


@pytest.mark.parametrize(
    "text, code, expected",
    [
        ("<a>", "AMDO", set()),
        ("'c<a>.0", "AMDO", {"channel", "continuation"}),
        ("(x*y).0", "AMDN", {"pattern-class"}),
        ("(=a).0", "AMDO", {"pattern-class"}),
        ("<a, b>", "AMDI", {"arity"}),
        ("(x, y).0", "SMDO", {"arity"}),
        ("<a*b>", "APDN", {"data-term"}),
        ("'a*b<c>", "AMCN", {"channel-term"}),
        ("<a>", "SMDO", {"continuation"}),
        ("<a>", "AMCO", {"channel"}),
        ("if a*b = c then ok", "AMDO", {"cond-term"}),
        ("'c<a, b>.0 | c(=a, y).ok", "SPCN", set()),
    ],
)
def test_conforms(text, code, expected):
    assert features(text, code) == expected


def test_relaxed_conditionals():
    assert features("if a*b = c then ok", "AMDO", strict_cond=False) == set()


def test_violations_carry_paths():
    [violation] = conforms(proc("<a> | (x*y).0"), lang("AMDN"))
    assert violation.path == "/1"
    assert "/1" in str(violation)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(x).<x>", set()),
        ("'a(=b, y).<y*b>", {"a", "b"}),
        ("new a.<a>", set()),
        ("if a = b then <c> else ok", {"a", "b", "c"}),
        ("!(x*=m).<x*n>", {"m", "n"}),
    ],
)
def test_free_names(text, expected):
    assert free_names_proc(proc(text)) == expected


def test_bound_and_all_names():
    p = proc("new a.(x, =b).<a*x*c>")
    assert bound_names_proc(p) == {"a", "x"}
    assert names_proc(p) == {"a", "b", "c", "x"}


def test_substitution_on_outputs_and_inputs():
    sigma = as_substitution({"x": "a"})
    assert apply_subst_proc(sigma, proc("<x> | (z).0")) == proc("<a> | (z).0")


def test_substitution_avoids_capture():
    result = apply_subst_proc(as_substitution({"x": "a"}), proc("new a.<x>"))
    assert isinstance(result, Restrict)
    assert result.name != "a"
    assert result.body == Output(None, (Leaf("a"),), None)


def test_substitution_respects_input_binders():
    p = proc("(x).<x*y>")
    assert apply_subst_proc(as_substitution({"x": "a"}), p) == p
    renamed = apply_subst_proc(as_substitution({"y": "x"}), p)
    assert alpha_eq(renamed, proc("(z).<z*x>"))


def test_substitution_updates_name_matches():
    p = proc("(=a, y).<y>")
    assert apply_subst_proc(as_substitution({"a": parse_term("b*c")}), p) == proc("(=b*=c, y).<y>")


def test_compound_substitution_needs_intensional_language():
    sigma = Substitution({"x": Leaf("a")}).extend({"y": parse_term("a*b")})
    with pytest.raises(SubstitutionError):
        apply_subst_proc(sigma, proc("<x> | <y>"), lang("AMDN"))
    apply_subst_proc(sigma, proc("<x> | <y>"), lang("AMDI"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_swapping_names_turns_one_witness_into_another(k):
    for i in range(1, k + 3):
        name = f"a{i}"
        swap = as_substitution({"m": name, name: "m"})
        assert apply_subst_proc(swap, s4(k, i)) == s3(k)


@pytest.mark.parametrize(
    "first, second, expected",
    [
        ("new a.<a>", "new b.<b>", True),
        ("(x).<x>", "(y).<y>", True),
        ("<a>", "<b>", False),
        ("(x, y).<x*y>", "(y, x).<y*x>", True),
        ("(x, y).<x*y>", "(x, y).<y*x>", False),
        ("new a.(x).<a*x>", "new x.(a).<x*a>", True),
        ("new a.<a> | <a>", "new b.<b> | <a>", True),
    ],
)
def test_alpha_eq(first, second, expected):
    assert alpha_eq(proc(first), proc(second)) is expected


def test_rename_is_a_name_substitution():
    assert rename(proc("<a> | a(x).<x>"), {"a": "b"}) == proc("<b> | b(x).<x>")


def test_fill_contexts():
    context = Par(Hole(0), Restrict("a", Hole(1)))
    assert holes(context) == [0, 1]
    filled = fill(context, [proc("<a>"), proc("ok")])
    assert filled == proc("<a> | new a.ok")
    with pytest.raises(ValueError):
        fill(context, [proc("ok")])
    with pytest.raises(ValueError):
        fill(Par(Hole(0), Hole(0)), [proc("ok")])


def test_builders():
    assert par() == Nil()
    assert output("a", "b") == proc("<a, b>")
    assert output("a", channel="c", continuation=Nil()) == proc("'c<a>.0")


@pytest.mark.parametrize("code", ["AMDO", "AMDI", "SPCN", "SPCI"])
@given(data=st.data())
@settings(max_examples=200, deadline=None)
def test_alpha_normal_is_alpha_equivalent(code, data):
    p = data.draw(processes(lang(code)))
    assert alpha_eq(p, alpha_normal(p))
    assert alpha_normal(alpha_normal(p)) == alpha_normal(p)
    assert free_names_proc(alpha_normal(p)) == free_names_proc(p)


@pytest.mark.parametrize("code", ["AMDO", "AMDI", "SPCI"])
@given(data=st.data())
@settings(max_examples=200, deadline=None)
def test_swapping_free_names_twice_is_the_identity(code, data):
    p = data.draw(processes(lang(code)))
    swap = as_substitution({"a": "b", "b": "a"})
    assert alpha_eq(apply_subst_proc(swap, apply_subst_proc(swap, p)), p)
