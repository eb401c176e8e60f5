"""
Bounded checks of the five validity criteria for an encoding pipeline

Every check works on one source unit. Reduction graphs are explored within
`Limits`; whenever a bound hides the answer the verdict is Inconclusive
rather than Pass or Fail.
"""

import logging
from collections import deque
from functools import cached_property

from patcalc.encodings.embed import embed
from patcalc.models.process import (
    alpha_eq,
    apply_subst_proc,
    children,
    fill,
    format_path,
    free_names_proc,
    subprocesses,
    with_children,
)
from patcalc.models.term import Leaf, Substitution, free_names_term, is_reserved
from patcalc.simulation.congruence import canonicalize
from patcalc.simulation.explorer import Truncation, explore
from patcalc.simulation.reduction import reduces
from patcalc.utils.config_manager import Limits
from patcalc.utils.constants import Constants
from patcalc.utils.errors import SubstitutionError
from patcalc.validity.verdict import Criterion, Report, Status, Verdict

logger = logging.getLogger(__name__)


def prepare_source(unit, pipeline):
    """
    The unit's body as a process of the pipeline's source language

    Units written in a smaller language are embedded first.

    Returns:
        Process | None: None when the unit's language is not below the source
    """
    if unit.language == pipeline.source:
        return unit.body
    if unit.language.leq(pipeline.source):
        return embed(unit.body, unit.language, pipeline.source)
    return None


class UnitRun:
    """
    A source unit, its encoding and both reduction graphs, computed lazily

    Args:
        unit (SourceUnit): Unit under test
        pipeline (Pipeline): Encoding under test
        limits (Limits): Exploration bounds for both graphs
    """

    def __init__(self, unit, pipeline, limits=None):
        source = prepare_source(unit, pipeline)
        if source is None:
            raise ValueError(f"unit {unit.name} in {unit.language} is not below {pipeline.source}")
        self.m_unit = unit
        self.m_pipeline = pipeline
        self.m_limits = limits or Limits()
        self.m_source = source
        self.m_encoded = pipeline.encode(source)
        self.m_images = {}

    @property
    def name(self):
        return self.m_unit.name

    @property
    def source(self):
        return self.m_source

    @property
    def encoded(self):
        return self.m_encoded

    @cached_property
    def source_graph(self):
        return explore(self.m_source, self.m_pipeline.source, self.m_limits.depth, self.m_limits.nodes)

    @cached_property
    def target_graph(self):
        return explore(self.m_encoded, self.m_pipeline.target, self.m_limits.depth, self.m_limits.nodes)

    def image(self, i):
        """Canonical form of the encoding of source node i"""
        if i not in self.m_images:
            state = self.source_graph.nodes[i].to_process()
            self.m_images[i] = canonicalize(self.m_pipeline.encode(state))
        return self.m_images[i]

    def verdict(self, criterion, status, witness=None):
        return Verdict(criterion=criterion, unit=self.m_unit.name, status=status, witness=witness)


def _operational_correspondence(run, pipeline):
    criterion = Criterion.OPERATIONAL_CORRESPONDENCE
    src, tgt = run.source_graph, run.target_graph
    profile = pipeline.step_profile
    images = set()
    for i in range(len(src.nodes)):
        image = run.image(i)
        j = tgt.node_id(image)
        if j is None:
            if tgt.truncated:
                return run.verdict(criterion, Status.INCONCLUSIVE, f"encoding of {src.nodes[i]} not reached within bounds")
            return run.verdict(
                criterion,
                Status.FAIL,
                f"source reaches {src.nodes[i]} along {src.describe_path(i)} but the encoding never reaches {image}",
            )
        if tgt.depths[j] > profile * src.depths[i]:
            return run.verdict(
                criterion,
                Status.FAIL,
                f"source reaches {src.nodes[i]} in {src.depths[i]} steps but the encoding needs {tgt.depths[j]}",
            )
        images.add(j)
    bound = profile + Constants.profileSlack
    for j in range(len(tgt.nodes)):
        found, complete = _reaches(tgt, j, images, bound)
        if found:
            continue
        if not complete:
            return run.verdict(criterion, Status.INCONCLUSIVE, f"{tgt.nodes[j]} not resolved within bounds")
        return run.verdict(
            criterion,
            Status.FAIL,
            f"encoded run {tgt.describe_path(j)} cannot reach the encoding of a source state within {bound} steps",
        )
    if src.truncated or tgt.truncated:
        return run.verdict(criterion, Status.INCONCLUSIVE, "reduction graph truncated")
    return run.verdict(criterion, Status.PASS)


def _reaches(graph, start, goals, bound):
    """Whether some goal is within `bound` steps of `start`, and whether the search saw every edge"""
    complete = True
    seen = {start}
    layer = deque([(start, 0)])
    while layer:
        node, dist = layer.popleft()
        if node in goals:
            return True, complete
        if dist == bound:
            continue
        if not graph.expanded(node):
            complete = complete and not graph.truncated
            continue
        for nxt in graph.successors(node):
            if nxt not in seen:
                seen.add(nxt)
                layer.append((nxt, dist + 1))
    return False, complete


def _divergence_reflection(run, pipeline, limits):
    criterion = Criterion.DIVERGENCE_REFLECTION
    src, tgt = run.source_graph, run.target_graph
    if src.cycle_found:
        return run.verdict(criterion, Status.PASS, "source diverges")
    if src.truncated:
        return run.verdict(criterion, Status.INCONCLUSIVE, "source graph truncated")
    cycle = tgt.find_cycle()
    if cycle:
        loop = " -> ".join(str(tgt.nodes[i]) for i in cycle)
        return run.verdict(criterion, Status.FAIL, f"encoding loops {loop} while the source terminates")
    if tgt.truncation == Truncation.DEPTH:
        longest = max(src.depths)
        if limits.depth > pipeline.step_profile * longest + Constants.profileSlack:
            return run.verdict(
                criterion,
                Status.FAIL,
                f"encoding still reduces after {limits.depth} steps while every source run stops within {longest}",
            )
    if tgt.truncated:
        return run.verdict(criterion, Status.INCONCLUSIVE, "encoded graph truncated")
    return run.verdict(criterion, Status.PASS)


def _success_sensitiveness(run):
    criterion = Criterion.SUCCESS_SENSITIVENESS
    src, tgt = run.source_graph, run.target_graph
    source_ok, target_ok = src.success_nodes, tgt.success_nodes
    if bool(source_ok) == bool(target_ok):
        if source_ok or not (src.truncated or tgt.truncated):
            return run.verdict(criterion, Status.PASS)
        return run.verdict(criterion, Status.INCONCLUSIVE, "no success within bounds")
    if source_ok:
        if tgt.truncated:
            return run.verdict(criterion, Status.INCONCLUSIVE, "encoded graph truncated before success")
        return run.verdict(
            criterion, Status.FAIL, f"source succeeds along {src.describe_path(source_ok[0])} but the encoding never does"
        )
    if src.truncated:
        return run.verdict(criterion, Status.INCONCLUSIVE, "source graph truncated before success")
    return run.verdict(
        criterion, Status.FAIL, f"encoding succeeds along {tgt.describe_path(target_ok[0])} but the source never does"
    )


def default_renaming(names):
    """
    Injective renaming moving every given name

    Sorted names are rotated by one; a single name gets a `_` suffix.
    Reserved names are left alone.
    """
    ordered = sorted(n for n in names if not is_reserved(n))
    if not ordered:
        return Substitution()
    if len(ordered) == 1:
        return Substitution({ordered[0]: Leaf(ordered[0] + "_")})
    return Substitution({n: Leaf(ordered[(i + 1) % len(ordered)]) for i, n in enumerate(ordered)})


def _name_invariance(run, pipeline, sigma=None):
    criterion = Criterion.NAME_INVARIANCE
    source = run.source
    sigma = default_renaming(free_names_proc(source)) if sigma is None else sigma
    touched = set(sigma.domain())
    for image in sigma.values():
        touched |= free_names_term(image)
    reserved = sorted(n for n in touched if is_reserved(n))
    if reserved:
        raise SubstitutionError(f"renaming {sigma} touches reserved names {', '.join(reserved)}")
    if not sigma.is_renaming() or not sigma.is_injective_on(free_names_proc(source)):
        return run.verdict(criterion, Status.INCONCLUSIVE, f"{sigma} is not an injective renaming")
    renamed_first = pipeline.encode(apply_subst_proc(sigma, source))
    encoded_first = apply_subst_proc(sigma, run.encoded)
    if alpha_eq(renamed_first, encoded_first):
        return run.verdict(criterion, Status.PASS)
    return run.verdict(
        criterion,
        Status.FAIL,
        f"with {sigma} encoding the renamed unit gives {renamed_first} but renaming the encoding gives {encoded_first}",
    )


def _compositionality(run, pipeline):
    for path, node in subprocesses(run.source):
        verdict = check_compositionality(node, children(node), pipeline, unit=run.name)
        if verdict.status == Status.FAIL:
            return verdict.model_copy(update={"witness": f"at {format_path(path)}: {verdict.witness}"})
    return run.verdict(Criterion.COMPOSITIONALITY, Status.PASS)


def check_operational_correspondence(unit, pipeline, limits=None):
    return _operational_correspondence(UnitRun(unit, pipeline, limits), pipeline)


def check_divergence_reflection(unit, pipeline, limits=None):
    limits = limits or Limits()
    return _divergence_reflection(UnitRun(unit, pipeline, limits), pipeline, limits)


def check_success_sensitiveness(unit, pipeline, limits=None):
    return _success_sensitiveness(UnitRun(unit, pipeline, limits))


def check_name_invariance(unit, pipeline, sigma=None):
    """
    Encoding commutes with an injective renaming of free names

    Raises:
        SubstitutionError: when sigma touches reserved names
    """
    return _name_invariance(UnitRun(unit, pipeline), pipeline, sigma)


def check_compositionality(op, parts, pipeline, unit=""):
    """
    The encoding of one operator applied to `parts` is the operator's
    context filled with the encoded parts

    Args:
        op (Process): Operator instance; only its top constructor is used
        parts (Sequence[Process]): Operands replacing its direct sub-processes
        pipeline (Pipeline): Encoding under test
        unit (str): Unit name recorded in the verdict
    """
    criterion = Criterion.COMPOSITIONALITY
    parts = tuple(parts)
    if len(parts) != len(children(op)):
        raise ValueError(f"{type(op).__name__} takes {len(children(op))} operands, got {len(parts)}")
    node = with_children(op, parts)
    context = pipeline.context(node)
    filled = fill(context, [pipeline.encode(k) for k in parts])
    whole = pipeline.encode(node)
    if alpha_eq(filled, whole):
        return Verdict(criterion=criterion, unit=unit, status=Status.PASS)
    return Verdict(
        criterion=criterion,
        unit=unit,
        status=Status.FAIL,
        witness=f"{type(node).__name__}: context {context} filled with the encoded parts gives {filled}, the encoding is {whole}",
    )


def check_unit_compositionality(unit, pipeline):
    """Every operator of the unit is encoded by a context independent of its operands"""
    return _compositionality(UnitRun(unit, pipeline), pipeline)


def check_deadlock_preservation(unit, pipeline):
    """
    A stuck source unit has a stuck encoding

    Returns:
        bool: True when the source can reduce or its encoding cannot
    """
    run = UnitRun(unit, pipeline)
    if reduces(canonicalize(run.source), pipeline.source):
        return True
    return not reduces(canonicalize(run.encoded), pipeline.target)


def lockstep_violations(unit, pipeline, limits=None):
    """
    Compare source and encoded graphs step by step

    With a profile of one step the encoded successors of each state must be
    exactly the encodings of its source successors. With two, every source
    step must be matched by two encoded steps, and every intermediate state
    must be completable into an encoded source successor.

    Returns:
        list[str]: Human readable violations, empty when none
    """
    run = UnitRun(unit, pipeline, limits)
    src, tgt = run.source_graph, run.target_graph
    profile = pipeline.step_profile
    found = []
    if profile == 1 and not (src.truncated or tgt.truncated) and len(src.nodes) != len(tgt.nodes):
        found.append(f"{len(src.nodes)} source states but {len(tgt.nodes)} encoded states")
    for i in range(len(src.nodes)):
        j = tgt.node_id(run.image(i))
        if j is None:
            found.append(f"encoding of {src.nodes[i]} is not reachable")
            continue
        if not src.expanded(i) or not tgt.expanded(j):
            continue
        expected = {run.image(k) for k in src.successors(i)}
        if profile == 1:
            actual = {tgt.nodes[k] for k in tgt.successors(j)}
            if actual != expected:
                found.append(f"{src.nodes[i]}: encoded successors differ from encoded source successors")
            continue
        middle = tgt.successors(j)
        reached = {tgt.nodes[k] for m in middle for k in tgt.successors(m)}
        for form in expected - reached:
            found.append(f"{src.nodes[i]}: {form} is not two encoded steps away")
        for m in middle:
            if tgt.expanded(m) and not any(tgt.nodes[k] in expected for k in tgt.successors(m)):
                found.append(f"intermediate state {tgt.nodes[m]} does not complete a source step")
    return found


def run_unit(unit, pipeline, limits=None, sigma=None):
    """All five verdicts for one unit, sharing the explored graphs"""
    limits = limits or Limits()
    run = UnitRun(unit, pipeline, limits)
    return [
        _compositionality(run, pipeline),
        _name_invariance(run, pipeline, sigma),
        _operational_correspondence(run, pipeline),
        _divergence_reflection(run, pipeline, limits),
        _success_sensitiveness(run),
    ]


def run_corpus(units, pipeline, limits=None):
    """
    Check every applicable unit of a corpus

    Units whose language is not below the pipeline's source are skipped.

    Returns:
        Report: Verdicts sorted by unit name
    """
    limits = limits or Limits()
    report = Report(pipeline=pipeline.describe())
    for unit in units:
        if prepare_source(unit, pipeline) is None:
            logger.warning(f"Skipping unit {unit.name}: {unit.language} is not below {pipeline.source}")
            report.skipped.append(unit.name)
            continue
        verdicts = run_unit(unit, pipeline, limits)
        report.verdicts.extend(verdicts)
        logger.info(f"unit {unit.name}: " + ", ".join(f"{v.criterion.value}={v.status.value}" for v in verdicts))
    report.verdicts.sort(key=lambda v: v.unit)
    report.skipped.sort()
    logger.info(report.summary())
    return report
