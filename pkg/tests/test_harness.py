import json

import pytest
from pydantic import ValidationError

from patcalc.encodings.mutants import MUTANTS
from patcalc.encodings.pipeline import plan
from patcalc.models.language import all_languages
from patcalc.models.process import children, contains_replication
from patcalc.models.term import Leaf, Substitution, as_substitution
from patcalc.simulation.congruence import canonicalize
from patcalc.simulation.reduction import reduces
from patcalc.syntax.corpus import parse_corpus
from patcalc.syntax.parser import parse_process
from patcalc.utils.config_manager import Limits
from patcalc.utils.errors import ImpossibleEncodingError, SubstitutionError
from patcalc.utils.witnesses import witness_units
from patcalc.validity.harness import (
    check_compositionality,
    check_deadlock_preservation,
    check_name_invariance,
    check_operational_correspondence,
    check_success_sensitiveness,
    check_unit_compositionality,
    default_renaming,
    lockstep_violations,
    prepare_source,
    run_corpus,
    run_unit,
)
from patcalc.validity.verdict import Criterion, Report, Status, Verdict
from tests.strategies import lang

PIPELINES = [("SPCI", "APCI"), ("SPCI", "SMCI"), ("SPCI", "SPDI"), ("SPCN", "AMDI"), ("SPCO", "AMDI")]


def unit(text):
    [parsed] = parse_corpus(text)
    return parsed


def by_name(units, name):
    return next(u for u in units if u.name == name)


@pytest.mark.parametrize("source, target", PIPELINES)
def test_valid_pipelines_pass_everywhere(shipped_corpus, source, target):
    report = run_corpus(shipped_corpus, plan(lang(source), lang(target)))
    assert report.failed == 0, report.to_text()
    assert report.inconclusive == 0, report.to_text()
    assert report.exit_code == 0
    applicable = [u for u in shipped_corpus if u.language.leq(lang(source))]
    assert len(report.verdicts) == 5 * len(applicable)
    assert len(report.skipped) == len(shipped_corpus) - len(applicable)


def test_replicated_units_pass(replication_corpus):
    report = run_corpus(replication_corpus, plan(lang("SPCI"), lang("APCI")), Limits(depth=12, nodes=2000))
    assert report.failed == 0, report.to_text()


@pytest.mark.parametrize(
    "mutant, unit_name, criterion",
    [
        ("drop-ack", "smdo_sync", Criterion.SUCCESS_SENSITIVENESS),
        ("drop-ok", "okay", Criterion.SUCCESS_SENSITIVENESS),
        ("loop-ack", "smdo_sync", Criterion.DIVERGENCE_REFLECTION),
        ("leak-name", "smdo_sync", Criterion.COMPOSITIONALITY),
    ],
)
def test_mutants_are_caught(shipped_corpus, mutant, unit_name, criterion):
    pipeline = plan(lang("SPCI"), lang("APCI"), synch=MUTANTS[mutant])
    verdicts = run_unit(by_name(shipped_corpus, unit_name), pipeline)
    failing = [v for v in verdicts if v.status == Status.FAIL]
    assert criterion in {v.criterion for v in failing}
    assert all(v.witness for v in failing)


def test_mutant_report_exit_code(shipped_corpus):
    units = [by_name(shipped_corpus, n) for n in ("okay", "nil", "amdo_pass")]
    report = run_corpus(units, plan(lang("SPCI"), lang("APCI"), synch=MUTANTS["drop-ok"]))
    assert report.failed >= 1
    assert report.exit_code == 1


def test_identity_pipeline(shipped_corpus):
    pipeline = plan(lang("AMDI"), lang("AMDI"))
    p_q = by_name(shipped_corpus, "p_q")
    assert check_operational_correspondence(p_q, pipeline).status == Status.PASS
    assert check_unit_compositionality(p_q, pipeline).status == Status.PASS
    assert check_success_sensitiveness(by_name(shipped_corpus, "p_s"), pipeline).status == Status.PASS


def test_bounds_make_verdicts_inconclusive():
    growing = unit("unit grow @ AMDO := !<a> | !(x).<b>\n")
    verdict = check_success_sensitiveness(growing, plan(lang("AMDO"), lang("AMDO")), Limits(depth=3, nodes=100))
    assert verdict.status == Status.INCONCLUSIVE


def stuck_units(units):
    return [u for u in units if not reduces(canonicalize(u.body), u.language)]


@pytest.mark.parametrize("target", all_languages(), ids=str)
def test_stuck_units_stay_stuck(shipped_corpus, target):
    stuck = stuck_units(shipped_corpus)
    assert {"amdn_miss", "amcn_stuck", "apdo_arity", "nil", "okay"} <= {u.name for u in stuck}
    checked = 0
    for source in all_languages():
        try:
            pipeline = plan(source, target)
        except ImpossibleEncodingError:
            continue
        for u in stuck:
            if prepare_source(u, pipeline) is None:
                continue
            assert check_deadlock_preservation(u, pipeline), (u.name, pipeline.describe())
            checked += 1
    assert checked > 0


@pytest.mark.parametrize(
    "source, target, profile",
    [("SPCI", "APCI", 2), ("SPCI", "SMCI", 1), ("SPCI", "SPDI", 1)],
)
def test_lockstep_over_the_corpus(shipped_corpus, source, target, profile):
    pipeline = plan(lang(source), lang(target))
    assert pipeline.step_profile == profile
    units = [u for u in shipped_corpus if not contains_replication(u.body)]
    assert len(units) == len(shipped_corpus)
    for u in units:
        assert lockstep_violations(u, pipeline) == [], u.name


def test_witnesses_pass_under_the_identity_encoding():
    report = run_corpus(witness_units(), plan(lang("AMDI"), lang("AMDI")))
    assert len(report.verdicts) == 5 * len(witness_units())
    assert report.failed == 0, report.to_text()
    assert report.inconclusive == 0, report.to_text()


def test_report_is_sorted_by_unit_name(shipped_corpus):
    units = [by_name(shipped_corpus, n) for n in ("p_s", "okay", "amdo_pass")]
    report = run_corpus(units, plan(lang("SPCI"), lang("APCI")))
    names = [v.unit for v in report.verdicts]
    assert names == sorted(names)
    assert names[0] == "amdo_pass"
    assert [v.criterion for v in report.verdicts[:5]] == list(Criterion)


def spci(text):
    return parse_process(text, lang("SPCI"))


@pytest.mark.parametrize(
    "op, target",
    [
        ("'c<a, b>.0 | c(x, y).ok", "SMCI"),
        ("'c<a>.ok", "APCI"),
        ("c(x).'x<x>.0", "APCI"),
        ("new c.'c<a>.0", "SPDI"),
        ("!c(x).ok", "APCI"),
    ],
)
def test_operator_contexts(op, target):
    op = spci(op)
    verdict = check_compositionality(op, children(op), plan(lang("SPCI"), lang(target)), unit="op")
    assert verdict.status == Status.PASS
    assert verdict.unit == "op"


def test_operator_context_with_other_operands():
    op = spci("'c<a>.ok")
    parts = [spci("d(y).'y<y>.0")]
    assert check_compositionality(op, parts, plan(lang("SPCI"), lang("APCI"))).status == Status.PASS


def test_leaking_context_fails_at_the_operator():
    op = spci("'c<a>.ok | c(y).0")
    verdict = check_compositionality(op, children(op), plan(lang("SPCI"), lang("APCI"), synch=MUTANTS["leak-name"]))
    assert verdict.status == Status.FAIL
    assert verdict.witness.startswith("Par")


def test_operator_needs_every_operand():
    with pytest.raises(ValueError):
        check_compositionality(spci("'c<a>.ok | c(y).0"), [spci("ok")], plan(lang("SPCI"), lang("APCI")))



def test_prepare_source_embeds_smaller_units(shipped_corpus):
    pipeline = plan(lang("SPCI"), lang("APCI"))
    assert str(prepare_source(by_name(shipped_corpus, "okay"), pipeline)) == "ok"
    assert prepare_source(by_name(shipped_corpus, "p_q"), plan(lang("SPCN"), lang("AMDI"))) is None


@pytest.mark.parametrize(
    "names, expected",
    [
        ({"a", "b", "c"}, {"a": "b", "b": "c", "c": "a"}),
        ({"a"}, {"a": "a_"}),
        ({"#k1", "a"}, {"a": "a_"}),
        (set(), {}),
    ],
)
def test_default_renaming(names, expected):
    assert default_renaming(names) == as_substitution(expected)


def test_name_invariance_rejects_reserved_renamings(shipped_corpus):
    pipeline = plan(lang("SPCI"), lang("APCI"))
    with pytest.raises(SubstitutionError):
        check_name_invariance(by_name(shipped_corpus, "amdo_pass"), pipeline, Substitution({"a": Leaf("#r")}))


def test_name_invariance_needs_an_injective_renaming(shipped_corpus):
    pipeline = plan(lang("SPCI"), lang("APCI"))
    sigma = as_substitution({"a": "c", "b": "c"})
    verdict = check_name_invariance(by_name(shipped_corpus, "amdo_race"), pipeline, sigma)
    assert verdict.status == Status.INCONCLUSIVE
    explicit = check_name_invariance(by_name(shipped_corpus, "amdo_race"), pipeline, as_substitution({"a": "b", "b": "a"}))
    assert explicit.status == Status.PASS


def test_failing_verdict_needs_a_witness():
    with pytest.raises(ValidationError):
        Verdict(criterion=Criterion.COMPOSITIONALITY, unit="u", status=Status.FAIL)
    verdict = Verdict(criterion=Criterion.COMPOSITIONALITY, unit="u", status=Status.FAIL, witness="a\tb")
    assert verdict.to_line() == "u\tCompositionality\tFail\ta b"


def test_report_output():
    report = Report(pipeline="SPCI -> APCI: Synch(SPCI->APCI)")
    report.verdicts.append(Verdict(criterion=Criterion.NAME_INVARIANCE, unit="u", status=Status.PASS))
    report.verdicts.append(Verdict(criterion=Criterion.NAME_INVARIANCE, unit="v", status=Status.INCONCLUSIVE, witness="bound"))
    assert report.summary() == "PASS 1 / FAIL 0 / INCONCLUSIVE 1"
    assert report.to_text().splitlines() == [
        "u\tNameInvariance\tPass",
        "v\tNameInvariance\tInconclusive\tbound",
        "PASS 1 / FAIL 0 / INCONCLUSIVE 1",
    ]
    assert report.exit_code == 0
    assert json.loads(report.to_json())["verdicts"][1]["status"] == "Inconclusive"
    assert Report.model_validate_json(report.to_json()) == report
