"""
Reading and writing corpora of named source units

A corpus is a text file of unit lines

    unit <name> @ <CODE> := <process text>

Lines whose first non-blank character is `#` are comments, blank lines are ignored and an
indented line continues the unit above it.
"""

import logging
import re
from pathlib import Path

from patcalc.models.language import LanguageDescriptor
from patcalc.models.source_unit import SourceUnit
from patcalc.syntax.parser import parse_process
from patcalc.syntax.printer import pretty
from patcalc.utils.constants import Constants
from patcalc.utils.errors import CorpusError, WorkbenchError

logger = logging.getLogger(__name__)

UNIT_LINE = re.compile(
    r"unit\s+(?P<name>[A-Za-z0-9_.\-]+)\s*@\s*(?P<code>\S+)\s*:=\s*(?P<body>.*)\Z"
)


def _records(text):
    """Group physical lines into (line number, unit line) records"""
    records = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(Constants.commentPrefix):
            continue
        if raw[0] in " \t":
            if not records:
                records.append((number, stripped))
            else:
                start, joined = records[-1]
                records[-1] = (start, f"{joined} {stripped}")
            continue
        records.append((number, stripped))
    return records


def parse_corpus(text, origin="<corpus>", allow_reserved=False, strict_cond=Constants.strictCond):
    """
    Parse corpus text into source units

    Every bad unit is reported, not only the first.

    Args:
        text (str): Corpus text
        origin (str): Where the text came from, for diagnostics
        allow_reserved (bool): Accept `#` names in unit bodies
        strict_cond (bool): Conformance option for conditionals

    Returns:
        list[SourceUnit]: Units in file order

    Raises:
        CorpusError: listing every failing unit
    """
    units = []
    failures = []
    seen = set()
    for number, record in _records(text):
        found = UNIT_LINE.match(record)
        if found is None:
            failures.append((f"line {number}", "not a unit line"))
            continue
        name = found.group("name")
        if name in seen:
            failures.append((name, f"duplicate unit name (line {number})"))
            continue
        seen.add(name)
        try:
            language = LanguageDescriptor.from_code(found.group("code"))
            body = parse_process(found.group("body"), language, allow_reserved, strict_cond)
        except (WorkbenchError, ValueError) as e:
            failures.append((name, f"{e} (unit starts on line {number})"))
            continue
        units.append(SourceUnit(language, name, body))
    if failures:
        raise CorpusError(origin, failures)
    logger.info(f"Loaded {len(units)} units from {origin}")
    return units


def load_corpus(path, allow_reserved=False, strict_cond=Constants.strictCond):
    """
    Load a corpus file

    Raises:
        CorpusError: when the file cannot be read or holds bad units
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, ValueError) as e:
        raise CorpusError(path, cause=e) from e
    return parse_corpus(text, str(path), allow_reserved, strict_cond)


def dump_corpus(units):
    """Render units one per line, readable by parse_corpus"""
    lines = [f"unit {u.name} @ {u.language.code} := {pretty(u.body)}" for u in units]
    return "\n".join(lines) + ("\n" if lines else "")
