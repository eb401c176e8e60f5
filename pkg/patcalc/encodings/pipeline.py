"""
Composition of encodings and planning between any two languages
"""

import logging

from patcalc.encodings.arity import ArityEncoding
from patcalc.encodings.embed import EmbedMatching, embedding_stages
from patcalc.encodings.medium import MediumEncoding
from patcalc.encodings.synch import SynchEncoding
from patcalc.models.language import Matching
from patcalc.models.process import Hole, children, conforms, with_children
from patcalc.utils.constants import Constants
from patcalc.utils.errors import ConformanceError, ImpossibleEncodingError

logger = logging.getLogger(__name__)


class Pipeline:
    """
    A sequence of encodings applied left to right

    Args:
        source (LanguageDescriptor): Language of the inputs
        target (LanguageDescriptor): Language of the outputs
        stages (list[Encoding]): Each stage's target is the next one's source
    """

    def __init__(self, source, target, stages, strict_cond=Constants.strictCond):
        current = source
        for stage in stages:
            if stage.source != current:
                raise ValueError(f"stage {stage} does not start from {current}")
            current = stage.target
        if current != target:
            raise ValueError(f"stages end in {current}, not {target}")
        self.m_source = source
        self.m_target = target
        self.m_stages = list(stages)
        self.m_strict_cond = strict_cond

    @property
    def source(self):
        return self.m_source

    @property
    def target(self):
        return self.m_target

    @property
    def stages(self):
        return list(self.m_stages)

    @property
    def step_profile(self):
        """Target steps needed to mimic one source step"""
        profile = 1
        for stage in self.m_stages:
            profile *= stage.step_profile
        return profile

    def encode(self, proc):
        """
        Run every stage

        Raises:
            ConformanceError: when `proc` is not a term of the source language
        """
        violations = conforms(proc, self.m_source, self.m_strict_cond)
        if violations:
            raise ConformanceError(self.m_source, violations)
        for stage in self.m_stages:
            proc = stage.encode(proc)
        return proc

    def context(self, proc):
        """Composed context of the top operator of `proc`"""
        if not self.m_stages:
            return with_children(proc, [Hole(i) for i in range(len(children(proc)))])
        ctx = self.m_stages[0].context(proc)
        for stage in self.m_stages[1:]:
            ctx = stage.translate(ctx, stage.fresh_names(ctx))
        return ctx

    def describe(self):
        if not self.m_stages:
            return f"{self.m_source} -> {self.m_target}: identity"
        return f"{self.m_source} -> {self.m_target}: " + " ; ".join(s.describe() for s in self.m_stages)

    def __str__(self):
        return self.describe()


def plan(source, target, strict_cond=Constants.strictCond, synch=SynchEncoding):
    """
    Encoding pipeline from `source` to `target`

    Below the target, the embeddings are enough. Otherwise the target must be
    intensional, and the pipeline raises matching first, then removes
    synchrony, arity and channels as needed, and finally embeds the rest.

    Args:
        source (LanguageDescriptor): Source language
        target (LanguageDescriptor): Target language
        strict_cond (bool): Conformance option for conditionals
        synch (type): Encoding class used to remove synchrony

    Raises:
        ImpossibleEncodingError: when no valid encoding exists
    """
    if source.leq(target):
        return Pipeline(source, target, embedding_stages(source, target, strict_cond), strict_cond)
    if not target.is_intensional:
        raise ImpossibleEncodingError(
            f"no valid encoding from {source} into {target}: "
            f"a language without intensional patterns cannot encode one that is not below it"
        )
    stages = []
    current = source
    if current.matching != Matching.I:
        stages.append(EmbedMatching(current, Matching.I, strict_cond))
        current = stages[-1].target
    if current.synchronism > target.synchronism:
        stages.append(synch(current, strict_cond))
        current = stages[-1].target
    if current.arity > target.arity:
        stages.append(ArityEncoding(current, strict_cond))
        current = stages[-1].target
    if current.medium > target.medium:
        stages.append(MediumEncoding(current, strict_cond))
        current = stages[-1].target
    stages.extend(embedding_stages(current, target, strict_cond))
    pipeline = Pipeline(source, target, stages, strict_cond)
    logger.debug(f"planned {pipeline.describe()}")
    return pipeline


def encode_to(proc, source, target, strict_cond=Constants.strictCond):
    """Encode a process of `source` into `target` through `plan`"""
    return plan(source, target, strict_cond).encode(proc)
