"""
Command line interface: parse, trace, encode, verify and succeeds

Exit codes: 0 success, 1 input error or failed verification, 2 impossible
encoding, 3 verdict limited by the exploration bounds.
"""

import logging
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path

import click

from patcalc.encodings.embed import embed
from patcalc.encodings.mutants import MUTANTS
from patcalc.encodings.pipeline import plan
from patcalc.encodings.synch import SynchEncoding
from patcalc.models.language import LanguageDescriptor
from patcalc.models.source_unit import SourceUnit
from patcalc.simulation.explorer import Explorer, Success, succeeds
from patcalc.syntax.corpus import dump_corpus, load_corpus
from patcalc.syntax.parser import parse_process
from patcalc.syntax.printer import pretty
from patcalc.utils.config_manager import ConfigManager
from patcalc.utils.constants import Constants
from patcalc.utils.errors import ImpossibleEncodingError, WorkbenchError
from patcalc.validity.harness import run_corpus

logger = logging.getLogger(__name__)

EXIT_INPUT = 1
EXIT_IMPOSSIBLE = 2
EXIT_BOUNDED = 3


class ImpossibleEncoding(click.ClickException):
    exit_code = EXIT_IMPOSSIBLE


@contextmanager
def usage_as_input_error():
    """Usage errors are input errors: exit 1, keeping 2 for impossible encodings"""
    try:
        yield
    except click.UsageError as e:
        e.exit_code = EXIT_INPUT
        raise


class WorkbenchGroup(click.Group):
    def make_context(self, info_name, args, parent=None, **extra):
        with usage_as_input_error():
            return super().make_context(info_name, args, parent, **extra)

    def invoke(self, ctx):
        with usage_as_input_error():
            return super().invoke(ctx)


@contextmanager
def diagnostics():
    """Turn workbench errors into click errors with the right exit code"""
    try:
        yield
    except ImpossibleEncodingError as e:
        raise ImpossibleEncoding(str(e)) from e
    except (WorkbenchError, ValueError, OSError) as e:
        raise click.ClickException(str(e)) from e


def language(code):
    if code is None:
        return None
    try:
        return LanguageDescriptor.from_code(code)
    except ValueError as e:
        raise click.ClickException(str(e)) from e


def read_units(path, lang, allow_reserved, strict_cond):
    """
    Units of a file: one unit of raw process text when a language is given,
    otherwise a corpus
    """
    if lang is None:
        return load_corpus(path, allow_reserved, strict_cond)
    text = Path(path).read_text(encoding="utf-8")
    body = parse_process(text, lang, allow_reserved, strict_cond)
    return [SourceUnit(lang, Path(path).stem, body)]


def limit_options(command):
    command = click.option("--nodes", type=click.IntRange(min=1), default=None, help="Maximum number of explored states")(command)
    command = click.option("--depth", type=click.IntRange(min=1), default=None, help="Maximum number of reduction steps")(command)
    return command


def input_options(command):
    command = click.option("--allow-reserved", is_flag=True, help="Accept reserved # names, e.g. in encoder output")(command)
    command = click.option("--lang", "lang_code", default=None, help="Read FILE as process text in this language (e.g. AMDI)")(command)
    return command


@click.group(cls=WorkbenchGroup)
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or debugging detail (-vv)")
@click.option("--config-dir", type=click.Path(file_okay=False), default=None, help="Directory holding config.json")
@click.pass_context
def main(ctx, verbose, config_dir):
    """Workbench for pattern-matching process calculi"""
    manager = ConfigManager(config_dir)
    with diagnostics():
        settings = manager.load_config()
    level = "DEBUG" if verbose > 1 else "INFO" if verbose == 1 else settings.log_level
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s", force=True)
    ctx.obj = settings


@main.command("parse")
@click.argument("file", type=click.Path(dir_okay=False))
@input_options
@click.option("--unicode", is_flag=True, help="Print with mathematical symbols")
@click.pass_obj
def cmd_parse(settings, file, lang_code, allow_reserved, unicode):
    """Check FILE and print its units in canonical layout"""
    with diagnostics():
        units = read_units(file, language(lang_code), allow_reserved, settings.strict_cond)
    if lang_code is not None:
        click.echo(pretty(units[0].body, unicode=unicode))
    elif unicode:
        for unit in units:
            click.echo(f"unit {unit.name} @ {unit.language} := {pretty(unit.body, unicode=True)}")
    else:
        click.echo(dump_corpus(units), nl=False)


@main.command("trace")
@click.argument("file", type=click.Path(dir_okay=False))
@input_options
@limit_options
@click.option("--graph", "as_graph", is_flag=True, help="Emit the edge list")
@click.option("--dot", "as_dot", is_flag=True, help="Emit a Graphviz description")
@click.option("--save", type=click.Path(dir_okay=False), default=None, help="Also save the exploration to a file")
@click.pass_obj
def cmd_trace(settings, file, lang_code, allow_reserved, depth, nodes, as_graph, as_dot, save):
    """Explore the reductions of every unit in FILE"""
    limits = settings.limits(depth, nodes)
    with diagnostics():
        units = read_units(file, language(lang_code), allow_reserved, settings.strict_cond)
    for unit in units:
        explorer = Explorer(unit.body, unit.language, limits.depth, limits.nodes)
        graph = explorer.run()
        if len(units) > 1:
            click.echo(f"# unit {unit.name} @ {unit.language}")
        if as_dot:
            click.echo(graph.to_dot(), nl=False)
        elif as_graph:
            click.echo(graph.to_edge_list(), nl=False)
        else:
            click.echo(graph.to_string(), nl=False)
        if graph.truncated:
            click.echo(f"truncated: {graph.truncation.value} limit reached", err=True)
        if save:
            target = save if len(units) == 1 else f"{save}.{unit.name}"
            if explorer.save_to_file(target, datetime.now().isoformat(timespec="seconds")):
                raise click.ClickException(f"cannot save exploration to {target}")


@main.command("encode")
@click.argument("file", type=click.Path(dir_okay=False))
@input_options
@click.option("--from", "from_code", default=None, help="Source language; defaults to each unit's own")
@click.option("--to", "to_code", required=True, help="Target language")
@click.pass_obj
def cmd_encode(settings, file, lang_code, allow_reserved, from_code, to_code):
    """Translate every unit of FILE into the target language"""
    target = language(to_code)
    source = language(from_code)
    encoded = []
    with diagnostics():
        units = read_units(file, language(lang_code), allow_reserved, settings.strict_cond)
        for unit in units:
            start = source or unit.language
            body = unit.body
            if unit.language != start:
                body = embed(body, unit.language, start, settings.strict_cond)
            pipeline = plan(start, target, settings.strict_cond)
            logger.info(f"unit {unit.name}: {pipeline.describe()}")
            encoded.append(SourceUnit(target, unit.name, pipeline.encode(body)))
    click.echo(dump_corpus(encoded), nl=False)


@main.command("verify")
@click.argument("corpus", type=click.Path(dir_okay=False), default=str(Constants.defaultCorpusPath))
@click.option("--from", "from_code", required=True, help="Source language of the pipeline")
@click.option("--to", "to_code", required=True, help="Target language of the pipeline")
@click.option("--mutant", type=click.Choice(sorted(MUTANTS)), default=None, help="Replace the synchrony encoding by a broken variant")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@limit_options
@click.pass_context
def cmd_verify(ctx, corpus, from_code, to_code, mutant, as_json, depth, nodes):
    """Check the validity criteria of a pipeline over CORPUS"""
    settings = ctx.obj
    limits = settings.limits(depth, nodes)
    synch = MUTANTS[mutant] if mutant else SynchEncoding
    with diagnostics():
        pipeline = plan(language(from_code), language(to_code), settings.strict_cond, synch)
        units = load_corpus(corpus, strict_cond=settings.strict_cond)
        report = run_corpus(units, pipeline, limits)
    click.echo(report.to_json() if as_json else report.to_text(), nl=as_json)
    ctx.exit(report.exit_code)


@main.command("succeeds")
@click.argument("file", type=click.Path(dir_okay=False))
@input_options
@limit_options
@click.pass_context
def cmd_succeeds(ctx, file, lang_code, allow_reserved, depth, nodes):
    """Report whether each unit of FILE can reach ok"""
    settings = ctx.obj
    limits = settings.limits(depth, nodes)
    with diagnostics():
        units = read_units(file, language(lang_code), allow_reserved, settings.strict_cond)
    bounded = False
    for unit in units:
        verdict = succeeds(unit.body, unit.language, limits.depth, limits.nodes)
        bounded = bounded or verdict == Success.NOT_WITHIN_BOUNDS
        prefix = f"{unit.name}\t" if len(units) > 1 else ""
        click.echo(f"{prefix}{verdict.value}")
    ctx.exit(EXIT_BOUNDED if bounded else 0)


if __name__ == "__main__":
    main()
