import json

import pytest
from click.testing import CliRunner

from patcalc.cli import main

SMALL = """unit p_q @ AMDI := <a*b> | (x*y).<y*x>
unit okay @ AMDO := ok
unit smdo_sync @ SMDO := <a>.ok | (y).0
"""


@pytest.fixture
def runner(config_home):
    return CliRunner()


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "small.corpus"
    path.write_text(SMALL, encoding="utf-8")
    return str(path)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_parse_corpus(runner, corpus):
    result = runner.invoke(main, ["parse", corpus])
    assert result.exit_code == 0
    assert result.stdout == SMALL


def test_parse_single_process(runner, tmp_path):
    path = write(tmp_path, "p.pi", "new a.(<a> | (=a).ok)\n")
    result = runner.invoke(main, ["parse", path, "--lang", "AMDN"])
    assert result.exit_code == 0
    assert result.stdout == "new a.(<a> | (=a).ok)\n"
    result = runner.invoke(main, ["parse", path, "--lang", "AMDN", "--unicode"])
    assert result.stdout == "ν a.(⟨a⟩ ∣ (⌜a⌝).✓)\n"


@pytest.mark.parametrize(
    "text, code",
    [("<a", "AMDO"), ("(x*y).0", "AMDN"), ("<#r>", "AMDO"), ("<a>", "XXXX")],
)
def test_parse_errors(runner, tmp_path, text, code):
    path = write(tmp_path, "bad.pi", text)
    result = runner.invoke(main, ["parse", path, "--lang", code])
    assert result.exit_code == 1
    assert "Error" in result.output


def test_reserved_names_with_flag(runner, tmp_path):
    path = write(tmp_path, "tagged.pi", "<#r*a>")
    assert runner.invoke(main, ["parse", path, "--lang", "AMDI", "--allow-reserved"]).exit_code == 0


def test_missing_file(runner, tmp_path):
    result = runner.invoke(main, ["parse", str(tmp_path / "absent.corpus")])
    assert result.exit_code == 1


def test_trace_graph(runner, tmp_path):
    path = write(tmp_path, "p_q.pi", "<a*b> | (x*y).<y*x>")
    result = runner.invoke(main, ["trace", path, "--lang", "AMDI", "--graph"])
    assert result.exit_code == 0
    assert result.stdout == "0: (#n0*#n1).<#n1*#n0> | <a*b>\n1: <b*a>\nedge: 0 -> 1\n"


def test_trace_corpus_and_save(runner, corpus, tmp_path):
    saved = tmp_path / "trace"
    result = runner.invoke(main, ["trace", corpus, "--save", str(saved)])
    assert result.exit_code == 0
    assert "# unit okay @ AMDO" in result.stdout
    assert (tmp_path / "trace.p_q").exists()


def test_trace_truncation_is_reported(runner, tmp_path):
    path = write(tmp_path, "grow.pi", "!<a> | !(x).ok")
    result = runner.invoke(main, ["trace", path, "--lang", "AMDO", "--depth", "2", "--dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph reductions {")
    assert "truncated: depth limit reached" in result.output


def test_encode(runner, corpus):
    result = runner.invoke(main, ["encode", corpus, "--to", "AMDI"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "unit p_q @ AMDI := <a*b> | (x*y).<y*x>"
    assert lines[2] == "unit smdo_sync @ AMDI := new #f0.(<#f0*a> | (=#f0).ok) | (#f1*y).(<#f1> | 0)"


def test_encode_impossible(runner, corpus):
    result = runner.invoke(main, ["encode", corpus, "--to", "SPCN"])
    assert result.exit_code == 2


def test_encode_from_a_larger_language(runner, tmp_path):
    path = write(tmp_path, "a.pi", "<a>")
    result = runner.invoke(main, ["encode", path, "--lang", "AMDO", "--from", "SMDO", "--to", "AMDI"])
    assert result.exit_code == 0
    assert result.stdout == "unit a @ AMDI := new #f0.(<#f0*a> | (=#f0).0)\n"


def test_verify(runner, corpus):
    result = runner.invoke(main, ["verify", corpus, "--from", "SPCI", "--to", "APCI"])
    assert result.exit_code == 0
    assert result.stdout.rstrip().endswith("PASS 15 / FAIL 0 / INCONCLUSIVE 0")


def test_verify_mutant(runner, corpus):
    result = runner.invoke(main, ["verify", corpus, "--from", "SPCI", "--to", "APCI", "--mutant", "drop-ok", "--json"])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    failing = [v for v in report["verdicts"] if v["status"] == "Fail"]
    assert {v["unit"] for v in failing} >= {"okay"}


def test_verify_impossible(runner, corpus):
    result = runner.invoke(main, ["verify", corpus, "--from", "AMDI", "--to", "SPCN"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "text, code, expected, exit_code",
    [
        ("<a*b> | (=a*=b).ok", "AMDI", "Yes", 0),
        ("<b> | (=a).ok", "AMDN", "NotWithinBounds", 3),
        ("!ok", "AMDO", "Yes", 0),
    ],
)
def test_succeeds(runner, tmp_path, text, code, expected, exit_code):
    path = write(tmp_path, "unit.pi", text)
    result = runner.invoke(main, ["succeeds", path, "--lang", code])
    assert result.exit_code == exit_code
    assert result.stdout == f"{expected}\n"


def test_succeeds_on_a_corpus(runner, corpus):
    result = runner.invoke(main, ["succeeds", corpus])
    assert result.exit_code == 3
    assert result.stdout.splitlines() == ["p_q\tNotWithinBounds", "okay\tYes", "smdo_sync\tYes"]


def test_invalid_configuration(runner, config_home, corpus):
    config_home.mkdir(parents=True)
    (config_home / "config.json").write_text("{broken")
    result = runner.invoke(main, ["parse", corpus])
    assert result.exit_code == 1


@pytest.mark.parametrize(
    "args",
    [
        ["encode", "{corpus}"],
        ["trace", "{corpus}", "--depth", "0"],
        ["verify", "{corpus}", "--from", "AMDI", "--to", "AMDI", "--nodes", "0"],
        ["parse", "{corpus}", "--no-such-option"],
        ["no-such-command"],
        ["--no-such-option", "parse", "{corpus}"],
    ],
)
def test_usage_errors_are_input_errors(runner, corpus, args):
    result = runner.invoke(main, [arg.format(corpus=corpus) for arg in args])
    assert result.exit_code == 1
    assert "Error" in result.output
