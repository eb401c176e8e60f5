import pytest

from patcalc.models.process import conforms
from patcalc.models.term import Substitution, as_substitution
from patcalc.simulation.congruence import canonicalize
from patcalc.simulation.explorer import explore
from patcalc.simulation.reduction import Redex, reduces, redexes, step, successors
from patcalc.syntax.parser import parse_process
from patcalc.utils.errors import StaleRedexError
from tests.strategies import lang


def form(text):
    return canonicalize(parse_process(text, allow_reserved=True))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("<a*b> | (x*y).<y*x>", "<b*a>"),
        ("<a*b> | (z).<z*c>", "<a*b*c>"),
        ("<a*b> | (=a*=b).ok", "ok"),
    ],
)
def test_one_tuple_three_receivers(text, expected):
    [(redex, succ)] = successors(form(text), lang("AMDI"))
    assert str(succ) == expected
    assert redex.arity == 1


def test_redex_records_tested_names():
    [redex] = redexes(form("<a*b> | (=a*=b).ok"), lang("AMDI"))
    assert redex.matched_names == {"a", "b"}
    assert redex.substitution == Substitution()
    [redex] = redexes(form("'c<a> | c(x).'d<x>"), lang("AMCO"))
    assert redex.matched_names == {"c"}
    assert redex.substitution == as_substitution({"#n0": "a"})


def test_polyadic_redex():
    [(redex, succ)] = successors(form("'c<a, b> | c(x, y).'x<y>"), lang("APCO"))
    assert redex.arity == 2
    assert str(succ) == "'a<b>"


@pytest.mark.parametrize(
    "text",
    ["<b> | (=a).ok", "'c<a> | d(x).ok", "<a> | (x, y).ok", "'c*d<a> | 'c*e(x).ok", "0"],
)
def test_stuck(text):
    state = form(text)
    assert redexes(state, lang("APCI")) == []
    assert not reduces(state, lang("APCI"))


def test_synchronous_continuations_run():
    [(_, succ)] = successors(form("<a>.ok | (y).0"), lang("SMDO"))
    assert str(succ) == "ok"


def test_race_gives_two_successors():
    results = {str(s) for _, s in successors(form("<a> | <b> | (x).<x*x>"), lang("AMDI"))}
    assert results == {"<a*a> | <b>", "<a> | <b*b>"}


def test_scope_extrusion():
    [(_, succ)] = successors(form("new c.'d<c> | d(x).'x<a>"), lang("AMCO"))
    assert str(succ) == "new #n0.'#n0<a>"


def test_replication_unfolds_one_copy():
    state = form("!(x).<x> | <a>")
    [(redex, succ)] = successors(state, lang("AMDO"))
    assert succ == state
    assert redex.input_copy == 0 and redex.output_copy is None


def test_replicated_restriction_is_fresh_each_time():
    [(_, succ)] = successors(form("!new c.<c> | (x).ok"), lang("AMDO"))
    assert succ.has_success
    assert str(succ) == "!new #n0.<#n0> | ok"


def test_both_participants_from_one_copy():
    state = form("!(<a> | (x).ok)")
    [(redex, succ)] = successors(state, lang("AMDO"))
    assert redex.output_thread == redex.input_thread == 0
    assert succ.has_success


def test_stale_redex():
    [redex] = redexes(form("<a> | (x).ok"), lang("AMDO"))
    with pytest.raises(StaleRedexError):
        step(form("<b> | (=a).ok"), redex, lang("AMDN"))
    foreign = Redex(0, 1, Substitution(), arity=3)
    with pytest.raises(StaleRedexError):
        step(form("<a> | (x).ok"), foreign, lang("AMDO"))


def test_step_matches_successors():
    state = form("<a> | <b> | (x).<x>")
    for redex, succ in successors(state, lang("AMDO")):
        assert step(state, redex, lang("AMDO")) == succ


def test_every_explored_state_stays_in_the_language(shipped_corpus, replication_corpus):
    for unit in shipped_corpus + replication_corpus:
        graph = explore(unit.body, unit.language, depth_limit=6, node_limit=300)
        for node in graph.nodes:
            assert conforms(node.to_process(), unit.language) == [], (unit.name, str(node))
