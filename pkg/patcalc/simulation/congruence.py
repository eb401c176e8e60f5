"""
Canonical representatives of structural congruence classes

A canonical form is a list of restricted names over a sorted list of
threads. Restricted names and input binders are renamed to `#n<level>`
so that congruent processes get identical forms. Replication is never
unfolded here, so `!P` and `P | !P` stay distinct.
"""

from dataclasses import dataclass, field
from functools import cached_property

from patcalc.models.process import (
    Cond,
    FreshNames,
    Input,
    Nil,
    Ok,
    Output,
    Par,
    Repl,
    Restrict,
    free_names_proc,
    names_proc,
    par,
    rename,
    restrict,
)
from patcalc.models.term import Binding, CompoundPattern, NameMatch, sequence_bindings
from patcalc.syntax.printer import pretty
from patcalc.utils.constants import Constants


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """
    Normal form `new n1...nk.(T1 | ... | Tm)`

    Attributes:
        restricted (tuple[str]): `#n0` ... `#n<k-1>`, all free in some thread
        threads (tuple[Process]): Sorted by their printed text
    """

    restricted: tuple
    threads: tuple
    text: str = field(default="", repr=False)

    def __post_init__(self):
        if not self.text:
            object.__setattr__(self, "text", pretty(self.to_process()))

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __str__(self):
        return self.text

    def to_process(self):
        return restrict(self.restricted, par(*self.threads))

    @cached_property
    def has_success(self):
        """A thread is `ok`, or unfolding a replicated thread once exposes one"""
        return any(_exposes_success(t) for t in self.threads)

    def names(self):
        out = set(self.restricted)
        for t in self.threads:
            out |= names_proc(t)
        return frozenset(out)


def _exposes_success(thread):
    if isinstance(thread, Ok):
        return True
    if isinstance(thread, Repl):
        return canonicalize(thread.body).has_success
    return False


def _rename_binders(p, mapping):
    if isinstance(p, Binding):
        return Binding(mapping[p.name])
    if isinstance(p, NameMatch):
        return p
    return CompoundPattern(_rename_binders(p.left, mapping), _rename_binders(p.right, mapping))


def level_name(level):
    return f"{Constants.canonicalPrefix}{level}"


class _Normalizer:
    def __init__(self, scratch):
        self.m_scratch = scratch

    def flatten(self, proc, temps, raw, resolve):
        """Strip restrictions and parallel structure, renaming restricted names apart"""
        if isinstance(proc, Nil):
            return
        if isinstance(proc, Par):
            self.flatten(proc.left, temps, raw, resolve)
            self.flatten(proc.right, temps, raw, resolve)
        elif isinstance(proc, Restrict):
            temp = self.m_scratch.next()
            temps.append(temp)
            self.flatten(rename(proc.body, {proc.name: temp}), temps, raw, resolve)
        elif isinstance(proc, Cond) and resolve:
            branch = proc.then if proc.lhs == proc.rhs else proc.otherwise
            self.flatten(branch, temps, raw, resolve)
        else:
            raw.append(proc)

    def group(self, proc, level, resolve):
        temps, raw = [], []
        self.flatten(proc, temps, raw, resolve)
        threads = [self.thread(t, level + len(temps), resolve) for t in raw]
        free = set()
        for t in threads:
            free |= free_names_proc(t)
        live = [n for n in temps if n in free]
        if live:
            numbering = _Numbering(self, raw, level, level + len(live), resolve).search(live)
            threads = [self.thread(rename(t, numbering), level + len(live), resolve) for t in raw]
        elif temps:
            threads = [self.thread(t, level, resolve) for t in raw]
        threads.sort(key=pretty)
        return [level_name(level + i) for i in range(len(live))], threads

    def body(self, proc, level, resolve):
        restricted, threads = self.group(proc, level, resolve)
        return restrict(restricted, par(*threads))

    def thread(self, proc, level, resolve):
        if isinstance(proc, Output):
            if proc.continuation is None:
                return proc
            return Output(proc.channel, proc.args, self.body(proc.continuation, level, resolve))
        if isinstance(proc, Input):
            bound = sequence_bindings(proc.patterns)
            mapping = {name: level_name(level + i) for i, name in enumerate(bound)}
            continuation = rename(proc.continuation, mapping) if mapping else proc.continuation
            return Input(
                proc.channel,
                tuple(_rename_binders(p, mapping) for p in proc.patterns),
                self.body(continuation, level + len(bound), False),
            )
        if isinstance(proc, Repl):
            return Repl(self.body(proc.body, level, resolve))
        if isinstance(proc, Cond):
            return Cond(
                proc.lhs,
                proc.rhs,
                self.body(proc.then, level, resolve),
                self.body(proc.otherwise, level, resolve),
            )
        return proc


class _Numbering:
    """
    Numbering of the restricted names of one group that prints it smallest

    Names are numbered one at a time. Each candidate for the next number is
    scored by printing the group with the candidate numbered and every name
    still pending replaced by one placeholder, so scores do not depend on how
    the threads or the restrictions were ordered. All best scoring candidates
    are tried, except that of two candidates exchanged by a symmetry of the
    group only one is.
    """

    def __init__(self, normalizer, raw, level, inner, resolve):
        self.m_normalizer = normalizer
        self.m_raw = raw
        self.m_free = [free_names_proc(t) for t in raw]
        self.m_level = level
        self.m_inner = inner
        self.m_resolve = resolve
        self.m_cache = {}

    def render(self, i, mapping):
        relevant = frozenset((k, v) for k, v in mapping.items() if k in self.m_free[i])
        key = (i, relevant)
        if key not in self.m_cache:
            thread = rename(self.m_raw[i], dict(relevant)) if relevant else self.m_raw[i]
            self.m_cache[key] = pretty(self.m_normalizer.thread(thread, self.m_inner, self.m_resolve))
        return self.m_cache[key]

    def text(self, mapping):
        return " | ".join(sorted(self.render(i, mapping) for i in range(len(self.m_raw))))

    def score(self, numbering, pending, name):
        mapping = {n: Constants.placeholderName for n in pending}
        mapping.update(numbering)
        mapping[name] = level_name(self.m_level + len(numbering))
        return self.text(mapping)

    def symmetric(self, numbering, first, second):
        swapped = dict(numbering)
        swapped[first] = second
        swapped[second] = first
        return self.text(swapped) == self.text(numbering)

    def search(self, live):
        numbering, _ = self._search({}, frozenset(live))
        return numbering

    def _search(self, numbering, pending):
        if not pending:
            return numbering, self.text(numbering)
        scored = sorted((self.score(numbering, pending, n), n) for n in pending)
        tied = [n for s, n in scored if s == scored[0][0]]
        chosen = []
        for name in tied:
            if not any(self.symmetric(numbering, name, other) for other in chosen):
                chosen.append(name)
        best = None
        for name in chosen:
            extended = dict(numbering)
            extended[name] = level_name(self.m_level + len(numbering))
            result = self._search(extended, pending.difference([name]))
            if best is None or result[1] < best[1]:
                best = result
        return best


def canonicalize(proc):
    """
    Canonical form of a process

    Conditionals not guarded by an input are resolved, unused restrictions
    are dropped and bound names are renamed by nesting level.

    Returns:
        CanonicalForm: Equal for structurally congruent processes
    """
    normalizer = _Normalizer(FreshNames(Constants.scratchPrefix, avoid=names_proc(proc)))
    restricted, threads = normalizer.group(proc, 0, True)
    return CanonicalForm(tuple(restricted), tuple(threads))


def struct_eq(first, second):
    """Structural congruence, decided through canonical forms"""
    return canonicalize(first) == canonicalize(second)


def open_group(proc, fresh):
    """
    Top-level restricted names and threads of a process

    Restricted names are renamed with names drawn from `fresh`.

    Returns:
        tuple: (list of restricted names, list of threads)
    """
    temps, raw = [], []
    _Normalizer(fresh).flatten(proc, temps, raw, True)
    return temps, raw
