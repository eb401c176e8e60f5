"""
Redex enumeration and single reduction steps over canonical forms
"""

from dataclasses import dataclass
from typing import Optional

from patcalc.models.process import (
    FreshNames,
    Input,
    Output,
    Repl,
    apply_subst_proc,
    par,
    restrict,
)
from patcalc.models.term import free_names_term, pattern_names, poly_match
from patcalc.simulation.congruence import canonicalize, open_group
from patcalc.utils.constants import Constants
from patcalc.utils.errors import StaleRedexError


@dataclass(frozen=True)
class Redex:
    """
    One possible interaction in a canonical form

    Threads are addressed by their index in `CanonicalForm.threads`. When a
    participant comes from a replicated thread, `*_copy` is its index among
    the threads of the one unfolded copy.

    Attributes:
        output_thread (int): Index of the output or replicated thread
        input_thread (int): Index of the input or replicated thread
        substitution (Substitution): Result of the pattern match
        output_copy (int | None): Position inside the unfolded copy
        input_copy (int | None): Position inside the unfolded copy
        arity (int): Number of terms exchanged
        matched_names (frozenset): Names tested for equality: the channel
            names and the name-match subjects of the input
    """

    output_thread: int
    input_thread: int
    substitution: object
    output_copy: Optional[int] = None
    input_copy: Optional[int] = None
    arity: int = 1
    matched_names: frozenset = frozenset()


class _Exposure:
    """Threads of a form plus one unfolded copy of every replicated thread"""

    def __init__(self, form):
        fresh = FreshNames(Constants.unfoldPrefix, avoid=form.names())
        self.m_form = form
        self.m_copies = {}
        self.m_entries = []
        for i, thread in enumerate(form.threads):
            if isinstance(thread, Repl):
                names, parts = open_group(thread.body, fresh)
                self.m_copies[i] = (names, parts)
                self.m_entries.extend((i, j, part) for j, part in enumerate(parts))
            else:
                self.m_entries.append((i, None, thread))

    def entries(self):
        return self.m_entries

    def participant(self, thread, copy):
        if copy is None:
            return self.m_form.threads[thread]
        return self.m_copies[thread][1][copy]

    def copy(self, thread):
        return self.m_copies[thread]


def _same_channel(out, inp):
    return out.channel == inp.channel


def _tested_names(out, inp):
    names = set()
    if out.channel is not None:
        names |= free_names_term(out.channel)
    for p in inp.patterns:
        names |= pattern_names(p)[1]
    return frozenset(names)


def _enumerate(exposure):
    entries = exposure.entries()
    outputs = [(i, j, p) for i, j, p in entries if isinstance(p, Output)]
    inputs = [(i, j, p) for i, j, p in entries if isinstance(p, Input)]
    for oi, oj, out in outputs:
        for ii, ij, inp in inputs:
            if not _same_channel(out, inp):
                continue
            sigma = poly_match(out.args, inp.patterns)
            if sigma is None:
                continue
            yield Redex(oi, ii, sigma, oj, ij, len(out.args), _tested_names(out, inp))


def redexes(form, language):
    """
    All redexes of a canonical form, in thread order

    Each replicated thread is unfolded exactly once, so both participants
    may come from the same copy.

    Args:
        form (CanonicalForm): Current state
        language (LanguageDescriptor): Language of the state

    Returns:
        list[Redex]: Ordered by output thread then input thread
    """
    return list(_enumerate(_Exposure(form)))


def reduces(form, language):
    """True when the state has at least one redex"""
    return next(_enumerate(_Exposure(form)), None) is not None


def _apply(form, redex, language, exposure):
    consumed = {(redex.output_thread, redex.output_copy), (redex.input_thread, redex.input_copy)}
    unfolded = {t for t, c in consumed if c is not None}
    restricted = list(form.restricted)
    remaining = []
    for i, thread in enumerate(form.threads):
        if i in unfolded:
            names, parts = exposure.copy(i)
            restricted.extend(names)
            remaining.append(thread)
            remaining.extend(part for j, part in enumerate(parts) if (i, j) not in consumed)
        elif (i, None) not in consumed:
            remaining.append(thread)
    out = exposure.participant(redex.output_thread, redex.output_copy)
    inp = exposure.participant(redex.input_thread, redex.input_copy)
    if out.continuation is not None:
        remaining.append(out.continuation)
    remaining.append(apply_subst_proc(redex.substitution, inp.continuation, language))
    return canonicalize(restrict(restricted, par(*remaining)))


def step(form, redex, language):
    """
    Perform one reduction

    Raises:
        StaleRedexError: when the redex is not one of the form's redexes
    """
    exposure = _Exposure(form)
    if redex not in _enumerate(exposure):
        raise StaleRedexError(f"redex {redex} does not belong to {form}")
    return _apply(form, redex, language, exposure)


def successors(form, language):
    """
    Every (redex, successor) pair of a state

    Returns:
        list[tuple[Redex, CanonicalForm]]
    """
    exposure = _Exposure(form)
    return [(r, _apply(form, r, language, exposure)) for r in _enumerate(exposure)]
