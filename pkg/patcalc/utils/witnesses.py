"""
Source-level witness processes for the separation results

All witnesses are monadic asynchronous dataspace processes (AMDI) over the
names a1, a2, ... and m.
"""

from patcalc.models.language import LanguageDescriptor
from patcalc.models.process import Input, Output, par
from patcalc.models.source_unit import SourceUnit
from patcalc.models.term import Binding, Leaf, compound, name_match, pattern_compound

WITNESS_LANGUAGE = LanguageDescriptor.from_code("AMDI")


def _names(k):
    return [f"a{i}" for i in range(1, k + 3)]


def _check_k(k):
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def s0():
    """`(x).<m>`: accepts anything"""
    return Input(None, (Binding("x"),), Output(None, (Leaf("m"),), None))


def s1():
    """`<a>`: a single name"""
    return Output(None, (Leaf("a"),), None)


def s2(k):
    """`<a1*...*a(k+2)>`: a compound of k+2 distinct names"""
    _check_k(k)
    return Output(None, (compound(*_names(k)),), None)


def s3(k):
    """`(=a1*...*=a(k+2)).<m>`: accepts exactly the term of s2(k)"""
    _check_k(k)
    pattern = pattern_compound(*[name_match(n) for n in _names(k)])
    return Input(None, (pattern,), Output(None, (Leaf("m"),), None))


def s4(k, i):
    """
    s3(k) with the i-th name-match replaced by `=m`, continuing with `<ai>`

    Args:
        k (int): Size parameter, at least 1
        i (int): Position in 1..k+2
    """
    _check_k(k)
    names = _names(k)
    if not 1 <= i <= len(names):
        raise ValueError(f"position {i} outside 1..{len(names)}")
    parts = [name_match("m" if j == i else n) for j, n in enumerate(names, start=1)]
    return Input(None, (pattern_compound(*parts),), Output(None, (Leaf(names[i - 1]),), None))


def witness_units(k_values=(1, 2, 3)):
    """
    Witness pairs as source units

    Returns:
        list[SourceUnit]: `s0 | s1` and, for every k, `s2 | s0`, `s2 | s3`
        and `s2 | s4(k, i)` for each position i
    """
    units = [SourceUnit(WITNESS_LANGUAGE, "w_s0_s1", par(s0(), s1()))]
    for k in k_values:
        units.append(SourceUnit(WITNESS_LANGUAGE, f"w{k}_s2_s0", par(s2(k), s0())))
        units.append(SourceUnit(WITNESS_LANGUAGE, f"w{k}_s2_s3", par(s2(k), s3(k))))
        for i in range(1, k + 3):
            units.append(SourceUnit(WITNESS_LANGUAGE, f"w{k}_s2_s4_{i}", par(s2(k), s4(k, i))))
    return units
