"""
Base class of translations between languages
"""

import logging
from abc import ABC, abstractmethod

from patcalc.models.process import (
    FreshNames,
    Hole,
    Input,
    Ok,
    Output,
    Par,
    children,
    conforms,
    names_proc,
    with_children,
)
from patcalc.utils.constants import Constants
from patcalc.utils.errors import ConformanceError, EncodingError

logger = logging.getLogger(__name__)


class Encoding(ABC):
    """
    Abstract base class for encodings

    An encoding is homomorphic on every operator except inputs and outputs,
    which each subclass translates through `translate_input` and
    `translate_output`. Holes are left in place, so translating a context
    yields the context of the encoding.

    Args:
        source (LanguageDescriptor): Language the encoding reads
        strict_cond (bool): Conformance option for conditionals
    """

    label = "Encoding"
    step_profile = 1

    def __init__(self, source, strict_cond=Constants.strictCond):
        if not self.accepts(source):
            raise EncodingError(f"{self.label} does not apply to {source}")
        self.m_source = source
        self.m_target = self.target_for(source)
        self.m_strict_cond = strict_cond

    @abstractmethod
    def accepts(self, source):
        """
        Whether the encoding is defined on a language

        Returns:
            bool: True when `source` is a valid source language
        """

    @abstractmethod
    def target_for(self, source):
        """
        Target language for a source language

        Returns:
            LanguageDescriptor: The language encoded processes belong to
        """

    @property
    def source(self):
        return self.m_source

    @property
    def target(self):
        return self.m_target

    def describe(self):
        return f"{self.label}({self.m_source}->{self.m_target})"

    def __str__(self):
        return self.describe()

    def fresh_names(self, proc):
        return FreshNames(Constants.freshPrefix, avoid=names_proc(proc))

    def check(self, proc):
        """Hook for extra source preconditions"""

    def encode(self, proc):
        """
        Translate a process of the source language

        Raises:
            ConformanceError: when `proc` is not a term of the source language
            EncodingError: when the result is not a term of the target language
        """
        violations = conforms(proc, self.m_source, self.m_strict_cond)
        if violations:
            raise ConformanceError(self.m_source, violations)
        self.check(proc)
        result = self.translate(proc, self.fresh_names(proc))
        violations = conforms(result, self.m_target, self.m_strict_cond)
        if violations:
            raise EncodingError(
                f"{self.describe()} produced a process outside {self.m_target}: "
                + "; ".join(str(v) for v in violations)
            )
        return result

    def context(self, proc):
        """
        Encoding of the top operator of `proc` with its children as holes

        Returns:
            Process: Context whose hole i stands for the encoding of child i
        """
        kids = children(proc)
        node = with_children(proc, [Hole(i) for i in range(len(kids))])
        return self.translate(node, self.fresh_names(proc))

    def translate(self, proc, fresh):
        if isinstance(proc, Input):
            return self.translate_input(proc, fresh)
        if isinstance(proc, Output):
            return self.translate_output(proc, fresh)
        if isinstance(proc, Par):
            return self.translate_par(proc, fresh)
        if isinstance(proc, Ok):
            return self.translate_ok(proc)
        kids = children(proc)
        if not kids:
            return proc
        return with_children(proc, [self.translate(k, fresh) for k in kids])

    def translate_input(self, proc, fresh):
        return Input(proc.channel, proc.patterns, self.translate(proc.continuation, fresh))

    def translate_output(self, proc, fresh):
        if proc.continuation is None:
            return proc
        return Output(proc.channel, proc.args, self.translate(proc.continuation, fresh))

    def translate_par(self, proc, fresh):
        return Par(self.translate(proc.left, fresh), self.translate(proc.right, fresh))

    def translate_ok(self, proc):
        return proc
