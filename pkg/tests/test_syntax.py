import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from patcalc.models.language import all_languages
from patcalc.models.process import (
    Cond,
    Input,
    Nil,
    Ok,
    Output,
    Par,
    Repl,
    alpha_eq,
    conforms,
)
from patcalc.models.term import Binding, Compound, CompoundPattern, Leaf
from patcalc.syntax.lexer import tokenize
from patcalc.syntax.parser import parse_pattern, parse_process, parse_term
from patcalc.syntax.printer import pretty
from patcalc.utils.errors import (
    ConformanceError,
    ParseError,
    ReservedNameError,
    WellFormednessError,
)
from tests.strategies import lang, processes


def test_parse_channel_output():
    assert parse_process("'a<b>", lang("AMCO")) == Output(Leaf("a"), (Leaf("b"),), None)


def test_parse_intensional_input():
    expected = Input(None, (CompoundPattern(Binding("x"), Binding("y")),), Ok())
    assert parse_process("(x*y).ok", lang("AMDI")) == expected


def test_parse_rejects_repeated_binders():
    with pytest.raises(WellFormednessError):
        parse_process("(x*x).0")
    with pytest.raises(WellFormednessError):
        parse_process("(x, x).0")


def test_parse_reports_position():
    with pytest.raises(ParseError) as info:
        parse_process("<a> |\n  <b")
    assert info.value.line == 2
    assert "line 2" in str(info.value)


@pytest.mark.parametrize("text", ["<a", "(x.0", "<a> <b>", "new .0", "a<b>", "'a", "<>", "$"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_process(text)


def test_reserved_names_need_permission():
    with pytest.raises(ReservedNameError):
        parse_process("<#r*a>")
    assert parse_process("<#r*a>", allow_reserved=True) == Output(None, (Compound(Leaf("#r"), Leaf("a")),), None)


def test_parse_checks_the_language():
    with pytest.raises(ConformanceError) as info:
        parse_process("'c<a>.0", lang("AMDO"))
    assert {v.feature for v in info.value.violations} == {"channel", "continuation"}


def test_dangling_else_belongs_to_nearest_if():
    p = parse_process("if a = b then if c = d then ok else 0")
    assert p == Cond(Leaf("a"), Leaf("b"), Cond(Leaf("c"), Leaf("d"), Ok(), Nil()), Nil())


def test_parallel_composition_associates_left():
    p = parse_process("<a> | <b> | <c>")
    assert isinstance(p, Par) and isinstance(p.left, Par)


def test_parse_terms_and_patterns():
    assert parse_term("a*b*c") == Compound(Compound(Leaf("a"), Leaf("b")), Leaf("c"))
    assert parse_term("a*(b*c)") == Compound(Leaf("a"), Compound(Leaf("b"), Leaf("c")))
    assert parse_pattern("=(a*b)") == parse_pattern("=a*=b")


def test_lexer_tracks_columns():
    tokens = tokenize("new a.0")
    assert [t.kind for t in tokens] == ["NEW", "NAME", "DOT", "ZERO", "EOF"]
    assert tokens[1].column == 5


@pytest.mark.parametrize(
    "proc, expected",
    [
        (Nil(), "0"),
        (Output(None, (Compound(Leaf("a"), Leaf("b")),), None), "<a*b>"),
        (Repl(Input(None, (Binding("x"),), Ok())), "!(x).ok"),
    ],
)
def test_pretty(proc, expected):
    assert pretty(proc) == expected


@pytest.mark.parametrize(
    "text",
    [
        "<a*b> | (x*y).<y*x>",
        "'c<a, b>.0 | c(=a, y).ok",
        "'a*b<c>.ok | 'a*b(x).0",
        "new a.(<a> | (x).<x>)",
        "if a = b then (if c = d then ok) else <e>",
        "if a = b then if c = d then ok else <e>",
        "<a> | (<b> | <c>)",
        "!(x).<x> | <a>",
        "(x*(=b*y)).<y*x>",
    ],
)
def test_pretty_is_canonical_layout(text):
    assert pretty(parse_process(text)) == text


def test_pretty_unicode():
    p = parse_process("new a.(<a*b> | (=a*x).ok) | !0")
    assert pretty(p, unicode=True) == "ν a.(⟨a•b⟩ ∣ (⌜a⌝•x).✓) ∣ ∗0"


@pytest.mark.parametrize("code", [l.code for l in all_languages()])
@given(data=st.data())
@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_round_trip(code, data):
    language = lang(code)
    p = data.draw(processes(language))
    assert conforms(p, language) == []
    parsed = parse_process(pretty(p), language)
    assert parsed == p
    assert alpha_eq(parsed, p)
