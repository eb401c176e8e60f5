"""
Process syntax tree, language conformance, substitution and alpha-equivalence
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from patcalc.models.term import (
    Binding,
    CompoundPattern,
    Leaf,
    NameMatch,
    Substitution,
    Term,
    apply_subst_term,
    as_term,
    binding_list,
    free_names_term,
    name_match,
    pattern_class,
    pattern_names,
    sequence_bindings,
)
from patcalc.utils.constants import Constants
from patcalc.utils.errors import SubstitutionError


class Process:
    """
    Base class of process syntax trees

    Nodes are immutable and compare structurally.
    """

    __slots__ = ()

    def __str__(self):
        from patcalc.syntax.printer import pretty

        return pretty(self)


@dataclass(frozen=True)
class Nil(Process):
    """The inactive process `0`"""


@dataclass(frozen=True)
class Ok(Process):
    """The success marker `ok`"""


@dataclass(frozen=True)
class Output(Process):
    """
    Output of one or more terms

    `channel` is None in dataspace languages. `continuation` is None exactly
    in asynchronous languages.
    """

    channel: Optional[Term]
    args: tuple
    continuation: Optional[Process] = None

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("an output carries at least one term")


@dataclass(frozen=True)
class Input(Process):
    """Input of one or more patterns guarding a continuation"""

    channel: Optional[Term]
    patterns: tuple
    continuation: Process

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if not self.patterns:
            raise ValueError("an input carries at least one pattern")


@dataclass(frozen=True)
class Restrict(Process):
    """Name restriction `new name.body`"""

    name: str
    body: Process


@dataclass(frozen=True)
class Par(Process):
    left: Process
    right: Process


@dataclass(frozen=True)
class Cond(Process):
    """`if lhs = rhs then then else otherwise`"""

    lhs: Term
    rhs: Term
    then: Process
    otherwise: Process


@dataclass(frozen=True)
class Repl(Process):
    body: Process


@dataclass(frozen=True)
class Hole(Process):
    """Numbered placeholder of a context"""

    index: int


def par(*procs):
    """Left-associated parallel composition; `0` when empty"""
    procs = [p for p in procs]
    if not procs:
        return Nil()
    result = procs[0]
    for p in procs[1:]:
        result = Par(result, p)
    return result


def restrict(names, body):
    """Nest restrictions, the first name outermost"""
    result = body
    for name in reversed(list(names)):
        result = Restrict(name, result)
    return result


def output(*args, channel=None, continuation=None):
    """Convenience constructor accepting name strings"""
    return Output(
        None if channel is None else as_term(channel),
        tuple(as_term(a) for a in args),
        continuation,
    )


def children(proc):
    """Direct sub-processes, in source order"""
    if isinstance(proc, Output):
        return () if proc.continuation is None else (proc.continuation,)
    if isinstance(proc, Input):
        return (proc.continuation,)
    if isinstance(proc, (Restrict, Repl)):
        return (proc.body,)
    if isinstance(proc, Par):
        return (proc.left, proc.right)
    if isinstance(proc, Cond):
        return (proc.then, proc.otherwise)
    return ()


def with_children(proc, kids):
    """Rebuild `proc` around new direct sub-processes"""
    kids = tuple(kids)
    if isinstance(proc, Output):
        if proc.continuation is None:
            return proc
        return replace(proc, continuation=kids[0])
    if isinstance(proc, Input):
        return replace(proc, continuation=kids[0])
    if isinstance(proc, (Restrict, Repl)):
        return replace(proc, body=kids[0])
    if isinstance(proc, Par):
        return Par(kids[0], kids[1])
    if isinstance(proc, Cond):
        return replace(proc, then=kids[0], otherwise=kids[1])
    return proc


def subprocesses(proc, path=()):
    """
    Every sub-process in pre-order, with its child-index path

    Yields:
        tuple: (path tuple, process)
    """
    stack = [(path, proc)]
    while stack:
        here, node = stack.pop()
        yield here, node
        kids = children(node)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((here + (i,), kids[i]))


def format_path(path):
    return "/" + "/".join(str(i) for i in path)


def contains_replication(proc):
    return any(isinstance(node, Repl) for _, node in subprocesses(proc))


def holes(proc):
    """Indices of every hole, in pre-order"""
    return [node.index for _, node in subprocesses(proc) if isinstance(node, Hole)]


def fill(context, parts):
    """
    Plug processes into the holes of a context

    Each hole index must occur exactly once and index into `parts`.

    Raises:
        ValueError: when the context is not linear in its holes
    """
    indices = holes(context)
    if sorted(indices) != list(range(len(parts))):
        raise ValueError(
            f"context holes {sorted(indices)} do not match {len(parts)} parts"
        )
    return _fill(context, tuple(parts))


def _fill(proc, parts):
    if isinstance(proc, Hole):
        return parts[proc.index]
    kids = children(proc)
    if not kids:
        return proc
    return with_children(proc, [_fill(k, parts) for k in kids])


def free_names_proc(proc):
    """Free names of a process; holes contribute none"""
    if isinstance(proc, (Nil, Ok, Hole)):
        return frozenset()
    if isinstance(proc, Output):
        names = set(free_names_term(proc.channel)) if proc.channel is not None else set()
        for arg in proc.args:
            names |= free_names_term(arg)
        if proc.continuation is not None:
            names |= free_names_proc(proc.continuation)
        return frozenset(names)
    if isinstance(proc, Input):
        names = set(free_names_term(proc.channel)) if proc.channel is not None else set()
        bound = set()
        for p in proc.patterns:
            binding, matched = pattern_names(p)
            names |= matched
            bound |= binding
        names |= free_names_proc(proc.continuation) - bound
        return frozenset(names)
    if isinstance(proc, Restrict):
        return free_names_proc(proc.body) - {proc.name}
    if isinstance(proc, Par):
        return free_names_proc(proc.left) | free_names_proc(proc.right)
    if isinstance(proc, Cond):
        return (
            free_names_term(proc.lhs)
            | free_names_term(proc.rhs)
            | free_names_proc(proc.then)
            | free_names_proc(proc.otherwise)
        )
    if isinstance(proc, Repl):
        return free_names_proc(proc.body)
    raise TypeError(f"not a process: {proc!r}")


def bound_names_proc(proc):
    """Names bound anywhere in the process by restrictions or inputs"""
    names = set()
    for _, node in subprocesses(proc):
        if isinstance(node, Restrict):
            names.add(node.name)
        elif isinstance(node, Input):
            names.update(sequence_bindings(node.patterns))
    return frozenset(names)


def names_proc(proc):
    """Every name occurring anywhere in the process"""
    names = set()
    for _, node in subprocesses(proc):
        if isinstance(node, Output):
            if node.channel is not None:
                names |= free_names_term(node.channel)
            for arg in node.args:
                names |= free_names_term(arg)
        elif isinstance(node, Input):
            if node.channel is not None:
                names |= free_names_term(node.channel)
            for p in node.patterns:
                binding, matched = pattern_names(p)
                names |= binding | matched
        elif isinstance(node, Restrict):
            names.add(node.name)
        elif isinstance(node, Cond):
            names |= free_names_term(node.lhs) | free_names_term(node.rhs)
    return frozenset(names)


@dataclass(frozen=True)
class Violation:
    """
    One reason a process is not a term of a language

    Attributes:
        path (str): Child-index path of the offending node, `/` for the root
        feature (str): Short tag such as `channel` or `pattern-class`
        message (str): Human readable explanation
    """

    path: str
    feature: str
    message: str

    def __str__(self):
        return f"at {self.path}: {self.message}"


def conforms(proc, language, strict_cond=Constants.strictCond):
    """
    Check a process against the grammar of a language

    Args:
        proc (Process): Process to check
        language (LanguageDescriptor): Target language
        strict_cond (bool): Require names in conditionals outside
            intensional languages

    Returns:
        list[Violation]: Empty iff the process is a term of the language
    """
    violations = []
    for path, node in subprocesses(proc):
        where = format_path(path)
        if isinstance(node, Output):
            _check_channel(node, language, where, violations)
            if language.is_synchronous and node.continuation is None:
                violations.append(Violation(where, "continuation", "synchronous output needs a continuation"))
            if not language.is_synchronous and node.continuation is not None:
                violations.append(Violation(where, "continuation", "asynchronous output cannot have a continuation"))
            if not language.is_polyadic and len(node.args) != 1:
                violations.append(Violation(where, "arity", f"monadic output carries {len(node.args)} terms"))
            if not language.is_intensional:
                for arg in node.args:
                    if not isinstance(arg, Leaf):
                        violations.append(Violation(where, "data-term", f"compound term {arg} needs an intensional language"))
        elif isinstance(node, Input):
            _check_channel(node, language, where, violations)
            if not language.is_polyadic and len(node.patterns) != 1:
                violations.append(Violation(where, "arity", f"monadic input carries {len(node.patterns)} patterns"))
            for p in node.patterns:
                if pattern_class(p) > language.matching:
                    violations.append(Violation(where, "pattern-class", f"pattern {p} is not allowed in {language}"))
            bound = sequence_bindings(node.patterns)
            if len(bound) != len(set(bound)):
                violations.append(Violation(where, "well-formed", "input binds a name more than once"))
        elif isinstance(node, Cond) and strict_cond and not language.is_intensional:
            for side in (node.lhs, node.rhs):
                if not isinstance(side, Leaf):
                    violations.append(Violation(where, "cond-term", f"conditional compares compound term {side}"))
    return violations


def _check_channel(node, language, where, violations):
    if language.is_channel_based and node.channel is None:
        violations.append(Violation(where, "channel", f"{language} needs a channel"))
    elif not language.is_channel_based and node.channel is not None:
        violations.append(Violation(where, "channel", f"{language} is channel-free"))
    elif node.channel is not None and not language.is_intensional and not isinstance(node.channel, Leaf):
        violations.append(Violation(where, "channel-term", f"compound channel {node.channel} needs an intensional language"))


class FreshNames:
    """
    Supplier of names `<prefix>0`, `<prefix>1`, ... skipping any name to avoid
    """

    def __init__(self, prefix=Constants.freshPrefix, avoid=()):
        self.m_prefix = prefix
        self.m_avoid = set(avoid)
        self.m_counter = 0

    def next(self):
        while True:
            name = f"{self.m_prefix}{self.m_counter}"
            self.m_counter += 1
            if name not in self.m_avoid:
                self.m_avoid.add(name)
                return name

    def avoid(self, names):
        self.m_avoid.update(names)


def apply_subst_proc(sigma, proc, language=None):
    """
    Capture-avoiding simultaneous substitution

    Bound names shadow the substitution. A binder is renamed to a fresh
    reserved name when it would capture a name from the range.

    Args:
        sigma (Substitution): Substitution to apply
        proc (Process): Target process
        language (LanguageDescriptor | None): When given and not intensional,
            only name-for-name substitutions are admitted

    Raises:
        SubstitutionError: when a compound image is used in a non-intensional
            language
    """
    if language is not None and not language.is_intensional and not sigma.is_renaming():
        raise SubstitutionError(f"{language} admits only names in substitutions, got {sigma}")
    if not sigma:
        return proc
    fresh = FreshNames(
        Constants.freshPrefix,
        avoid=names_proc(proc) | sigma.domain() | sigma.range_names(),
    )
    return _subst(sigma, proc, fresh)


def _enter_binders(bound, sigma, body, fresh):
    inner = sigma.without(bound).restrict(free_names_proc(body))
    if not inner:
        return inner, {}
    danger = inner.range_names()
    renaming = {}
    for name in bound:
        if name in danger:
            renaming[name] = fresh.next()
    if renaming:
        inner = inner.extend({old: Leaf(new) for old, new in renaming.items()})
    return inner, renaming


def _rename_bindings(p, sigma, renaming):
    if isinstance(p, Binding):
        return Binding(renaming.get(p.name, p.name))
    if isinstance(p, NameMatch):
        image = sigma.get(p.subject.name)
        return p if image is None else name_match(image)
    return CompoundPattern(
        _rename_bindings(p.left, sigma, renaming),
        _rename_bindings(p.right, sigma, renaming),
    )


def _subst(sigma, proc, fresh):
    if not sigma or isinstance(proc, (Nil, Ok, Hole)):
        return proc
    if isinstance(proc, Output):
        return Output(
            None if proc.channel is None else apply_subst_term(sigma, proc.channel),
            tuple(apply_subst_term(sigma, a) for a in proc.args),
            None if proc.continuation is None else _subst(sigma, proc.continuation, fresh),
        )
    if isinstance(proc, Input):
        bound = sequence_bindings(proc.patterns)
        inner, renaming = _enter_binders(bound, sigma, proc.continuation, fresh)
        return Input(
            None if proc.channel is None else apply_subst_term(sigma, proc.channel),
            tuple(_rename_bindings(p, sigma, renaming) for p in proc.patterns),
            _subst(inner, proc.continuation, fresh),
        )
    if isinstance(proc, Restrict):
        inner, renaming = _enter_binders([proc.name], sigma, proc.body, fresh)
        return Restrict(renaming.get(proc.name, proc.name), _subst(inner, proc.body, fresh))
    if isinstance(proc, Par):
        return Par(_subst(sigma, proc.left, fresh), _subst(sigma, proc.right, fresh))
    if isinstance(proc, Cond):
        return Cond(
            apply_subst_term(sigma, proc.lhs),
            apply_subst_term(sigma, proc.rhs),
            _subst(sigma, proc.then, fresh),
            _subst(sigma, proc.otherwise, fresh),
        )
    if isinstance(proc, Repl):
        return Repl(_subst(sigma, proc.body, fresh))
    raise TypeError(f"not a process: {proc!r}")


def rename(proc, mapping):
    """Apply a name-for-name substitution given as a plain dict"""
    return apply_subst_proc(Substitution({k: Leaf(v) for k, v in mapping.items()}), proc)


def alpha_normal(proc):
    """
    Rename every binder to `#v<i>` in traversal order

    Two processes are alpha-equivalent iff they have the same free names and
    the same alpha-normal form.
    """
    fresh = FreshNames(Constants.alphaPrefix, avoid=free_names_proc(proc))
    return _alpha(proc, Substitution(), fresh)


def _alpha_term(t, env):
    if not env:
        return t
    return apply_subst_term(env, t)


def _alpha_pattern(p, env, binders):
    if isinstance(p, Binding):
        return Binding(binders[p.name])
    if isinstance(p, NameMatch):
        image = env.get(p.subject.name)
        return p if image is None else NameMatch(image)
    return CompoundPattern(_alpha_pattern(p.left, env, binders), _alpha_pattern(p.right, env, binders))


def _alpha(proc, env, fresh):
    if isinstance(proc, (Nil, Ok, Hole)):
        return proc
    if isinstance(proc, Output):
        return Output(
            None if proc.channel is None else _alpha_term(proc.channel, env),
            tuple(_alpha_term(a, env) for a in proc.args),
            None if proc.continuation is None else _alpha(proc.continuation, env, fresh),
        )
    if isinstance(proc, Input):
        binders = {}
        for p in proc.patterns:
            for name in binding_list(p):
                binders[name] = fresh.next()
        inner = env.extend({old: Leaf(new) for old, new in binders.items()}) if binders else env
        return Input(
            None if proc.channel is None else _alpha_term(proc.channel, env),
            tuple(_alpha_pattern(p, env, binders) for p in proc.patterns),
            _alpha(proc.continuation, inner, fresh),
        )
    if isinstance(proc, Restrict):
        new = fresh.next()
        return Restrict(new, _alpha(proc.body, env.extend({proc.name: Leaf(new)}), fresh))
    if isinstance(proc, Par):
        return Par(_alpha(proc.left, env, fresh), _alpha(proc.right, env, fresh))
    if isinstance(proc, Cond):
        return Cond(
            _alpha_term(proc.lhs, env),
            _alpha_term(proc.rhs, env),
            _alpha(proc.then, env, fresh),
            _alpha(proc.otherwise, env, fresh),
        )
    if isinstance(proc, Repl):
        return Repl(_alpha(proc.body, env, fresh))
    raise TypeError(f"not a process: {proc!r}")


def alpha_eq(first, second):
    """Equality up to consistent renaming of bound names"""
    if free_names_proc(first) != free_names_proc(second):
        return False
    return alpha_normal(first) == alpha_normal(second)
