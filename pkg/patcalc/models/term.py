"""
Terms, patterns, substitutions and the match rules that drive every interaction
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass

from patcalc.models.language import Matching
from patcalc.utils.constants import Constants
from patcalc.utils.errors import CaptureError, IllFormedPatternError

NAME_PATTERN = re.compile(r"[A-Za-z#][A-Za-z0-9_]*\Z")


def is_valid_name(text):
    """Check the lexical shape of a name"""
    return isinstance(text, str) and NAME_PATTERN.match(text) is not None


def is_reserved(name):
    """Reserved names are internal to encodings and canonical forms"""
    return name.startswith(Constants.reservedPrefix)


class Term:
    """
    Base class of communicable values: a name or a compound `s*t`
    """

    __slots__ = ()

    def __str__(self):
        from patcalc.syntax.printer import pretty_term

        return pretty_term(self)


@dataclass(frozen=True, repr=False)
class Leaf(Term):
    """A single name used as a term"""

    name: str

    def __post_init__(self):
        if not is_valid_name(self.name):
            raise ValueError(f"invalid name: {self.name!r}")

    def __repr__(self):
        return f"Leaf({self.name!r})"


@dataclass(frozen=True, repr=False)
class Compound(Term):
    """A compound term `left*right`"""

    left: Term
    right: Term

    def __repr__(self):
        return f"Compound({self.left!r}, {self.right!r})"


def as_term(value):
    """Accept a Term or a bare name string"""
    if isinstance(value, Term):
        return value
    return Leaf(value)


def compound(*parts):
    """
    Build a left-associated compound term

    Args:
        *parts: Terms or name strings, at least one

    Returns:
        Term: `((p1*p2)*...)*pn`
    """
    if not parts:
        raise ValueError("compound needs at least one part")
    terms = [as_term(p) for p in parts]
    result = terms[0]
    for t in terms[1:]:
        result = Compound(result, t)
    return result


def free_names_term(t):
    """Set of all leaf names in a term"""
    names = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            names.add(node.name)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return frozenset(names)


class Pattern:
    """
    Base class of input patterns: binding, name-match, or compound
    """

    __slots__ = ()

    def __str__(self):
        from patcalc.syntax.printer import pretty_pattern

        return pretty_pattern(self)


@dataclass(frozen=True, repr=False)
class Binding(Pattern):
    """A binding name, bound in the continuation of the input"""

    name: str

    def __post_init__(self):
        if not is_valid_name(self.name):
            raise ValueError(f"invalid binding name: {self.name!r}")

    def __repr__(self):
        return f"Binding({self.name!r})"


@dataclass(frozen=True, repr=False)
class NameMatch(Pattern):
    """
    Equality test against a name

    Only single names are stored here; a name-match over a compound is
    expanded into a compound of name-matches by `name_match`.
    """

    subject: Leaf

    def __post_init__(self):
        if not isinstance(self.subject, Leaf):
            raise ValueError("NameMatch holds a single name; use name_match() for compounds")

    def __repr__(self):
        return f"NameMatch({self.subject!r})"


@dataclass(frozen=True, repr=False)
class CompoundPattern(Pattern):
    """A compound pattern `left*right`"""

    left: Pattern
    right: Pattern

    def __repr__(self):
        return f"CompoundPattern({self.left!r}, {self.right!r})"


def name_match(t):
    """
    Canonical name-match over any term

    `=(s*t)` is the same pattern as `=s*=t`, so compounds are expanded here.

    Args:
        t (Term | str): Subject to test for equality

    Returns:
        Pattern: NameMatch for a name, CompoundPattern of name-matches otherwise
    """
    t = as_term(t)
    if isinstance(t, Leaf):
        return NameMatch(t)
    return CompoundPattern(name_match(t.left), name_match(t.right))


def pattern_compound(*parts):
    """Build a left-associated compound pattern"""
    if not parts:
        raise ValueError("pattern_compound needs at least one part")
    result = parts[0]
    for p in parts[1:]:
        result = CompoundPattern(result, p)
    return result


def binding_list(p):
    """Binding names of a pattern in left-to-right order, repetitions kept"""
    out = []
    _collect_bindings(p, out)
    return out


def _collect_bindings(p, out):
    if isinstance(p, Binding):
        out.append(p.name)
    elif isinstance(p, CompoundPattern):
        _collect_bindings(p.left, out)
        _collect_bindings(p.right, out)


def pattern_names(p):
    """
    Binding and matched names of a pattern

    Args:
        p (Pattern): Pattern, possibly ill-formed

    Returns:
        tuple: (frozenset of binding names, frozenset of name-matched names)
    """
    binding, matched = set(), set()
    stack = [p]
    while stack:
        node = stack.pop()
        if isinstance(node, Binding):
            binding.add(node.name)
        elif isinstance(node, NameMatch):
            matched.add(node.subject.name)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return frozenset(binding), frozenset(matched)


def is_well_formed(p):
    """True iff no binding name occurs twice in the pattern"""
    names = binding_list(p)
    return len(names) == len(set(names))


def sequence_bindings(patterns):
    """Binding names across a whole pattern sequence, in order"""
    names = []
    for p in patterns:
        names.extend(binding_list(p))
    return names


def check_well_formed(patterns):
    """
    Reject pattern sequences whose binding names repeat

    Raises:
        IllFormedPatternError: when a binding name occurs more than once
    """
    seen = set()
    for name in sequence_bindings(patterns):
        if name in seen:
            raise IllFormedPatternError(f"binding name {name} occurs more than once")
        seen.add(name)


def pattern_class(p):
    """
    Least matching degree whose languages admit the pattern

    Returns:
        Matching: NO for a lone binding, NM for a lone name-match, I otherwise
    """
    if isinstance(p, Binding):
        return Matching.NO
    if isinstance(p, NameMatch):
        return Matching.NM
    return Matching.I


class Substitution(Mapping):
    """
    Finite map from names to terms, applied simultaneously

    Instances are immutable; all combinators return new substitutions.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings=None):
        items = dict(bindings or {})
        for name, image in items.items():
            if not is_valid_name(name):
                raise ValueError(f"invalid name in substitution domain: {name!r}")
            if not isinstance(image, Term):
                raise TypeError(f"substitution image for {name} is not a term: {image!r}")
        self._bindings = items

    def __getitem__(self, name):
        return self._bindings[name]

    def __iter__(self):
        return iter(self._bindings)

    def __len__(self):
        return len(self._bindings)

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def __repr__(self):
        from patcalc.syntax.printer import pretty_subst

        return pretty_subst(self)

    __str__ = __repr__

    def domain(self):
        return frozenset(self._bindings)

    def range_names(self):
        """Free names of every image"""
        names = set()
        for image in self._bindings.values():
            names |= free_names_term(image)
        return frozenset(names)

    def restrict(self, names):
        """Keep only the bindings whose name is in `names`"""
        names = set(names)
        return Substitution({k: v for k, v in self._bindings.items() if k in names})

    def without(self, names):
        """Drop the bindings whose name is in `names`"""
        names = set(names)
        if not names & self._bindings.keys():
            return self
        return Substitution({k: v for k, v in self._bindings.items() if k not in names})

    def extend(self, bindings):
        """Add or overwrite bindings"""
        merged = dict(self._bindings)
        merged.update(bindings)
        return Substitution(merged)

    def union(self, other):
        """
        Disjoint union

        Raises:
            IllFormedPatternError: when the domains overlap
        """
        overlap = self.domain() & other.domain()
        if overlap:
            raise IllFormedPatternError(f"overlapping bindings: {', '.join(sorted(overlap))}")
        merged = dict(self._bindings)
        merged.update(other)
        return Substitution(merged)

    def is_renaming(self):
        """True when every image is a single name"""
        return all(isinstance(v, Leaf) for v in self._bindings.values())

    def is_injective_on(self, names):
        """True when distinct names of `names` get distinct images"""
        images = [self._bindings.get(n, Leaf(n)) for n in names]
        return len(set(images)) == len(images)


def apply_subst_term(sigma, t):
    """Replace every leaf in dom(sigma) by its image"""
    if not sigma:
        return t
    if isinstance(t, Leaf):
        return sigma.get(t.name, t)
    left = apply_subst_term(sigma, t.left)
    right = apply_subst_term(sigma, t.right)
    if left is t.left and right is t.right:
        return t
    return Compound(left, right)


def apply_subst_pattern(sigma, p):
    """
    Substitute the name-match subjects of a pattern

    Binding names are never substituted. The caller renames binders out of
    the way first.

    Raises:
        CaptureError: when a binding name is in dom(sigma) or in its range
    """
    binding, _ = pattern_names(p)
    clash = binding & (sigma.domain() | sigma.range_names())
    if clash:
        raise CaptureError(f"substitution {sigma} touches binding names {', '.join(sorted(clash))}")
    return _subst_subjects(sigma, p)


def _subst_subjects(sigma, p):
    if isinstance(p, Binding):
        return p
    if isinstance(p, NameMatch):
        image = sigma.get(p.subject.name)
        return p if image is None else name_match(image)
    return CompoundPattern(_subst_subjects(sigma, p.left), _subst_subjects(sigma, p.right))


def _match_into(t, p, out):
    if isinstance(p, Binding):
        out[p.name] = t
        return True
    if isinstance(p, NameMatch):
        return t == p.subject
    if not isinstance(t, Compound):
        return False
    return _match_into(t.left, p.left, out) and _match_into(t.right, p.right, out)


def match_one(t, p):
    """
    Match a single term against a single pattern

    Args:
        t (Term): Communicated term
        p (Pattern): Well-formed pattern

    Returns:
        Substitution | None: bindings for every binding name of p, or None
        when the match is undefined

    Raises:
        IllFormedPatternError: when p repeats a binding name
    """
    if not is_well_formed(p):
        raise IllFormedPatternError(f"pattern {p} repeats a binding name")
    out = {}
    if not _match_into(t, p, out):
        return None
    return Substitution(out)


def poly_match(terms, patterns):
    """
    Match a sequence of terms against a sequence of patterns

    Returns:
        Substitution | None: disjoint union of the component matches, or None
        when the arities differ or a component match is undefined

    Raises:
        IllFormedPatternError: when binding names repeat across the sequence
    """
    check_well_formed(patterns)
    if len(terms) != len(patterns):
        return None
    out = {}
    for t, p in zip(terms, patterns):
        if not _match_into(t, p, out):
            return None
    return Substitution(out)


def instantiate(p, sigma):
    """
    The term a pattern denotes once its binding names take their images

    Name-matches erase to the name they test. Used to check match soundness.

    Raises:
        ValueError: when a binding name has no image in sigma
    """
    if isinstance(p, Binding):
        if p.name not in sigma:
            raise ValueError(f"no image for binding name {p.name}")
        return sigma[p.name]
    if isinstance(p, NameMatch):
        return p.subject
    return Compound(instantiate(p.left, sigma), instantiate(p.right, sigma))


def subterms(t):
    """All subterms of t, t included, in pre-order"""
    out = [t]
    if isinstance(t, Compound):
        out.extend(subterms(t.left))
        out.extend(subterms(t.right))
    return out


def as_substitution(mapping):
    """Accept a Substitution or a plain {name: term-or-name} mapping"""
    if isinstance(mapping, Substitution):
        return mapping
    if isinstance(mapping, Mapping):
        return Substitution({k: as_term(v) for k, v in mapping.items()})
    raise TypeError(f"not a substitution: {mapping!r}")
