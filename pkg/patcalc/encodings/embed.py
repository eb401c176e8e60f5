"""
Embeddings of a language into a more expressive one

Each embedding raises one coordinate. Only two are not the identity:
asynchronous outputs gain a `0` continuation, and dataspace communication
of arity i moves onto the reserved channel `#k<i>`.
"""

from patcalc.encodings.encoding import Encoding
from patcalc.models.language import Arity, Matching, Medium, Synchronism
from patcalc.models.process import Input, Nil, Output
from patcalc.models.term import Leaf
from patcalc.utils.constants import Constants
from patcalc.utils.errors import EncodingError


def arity_channel(arity):
    return Leaf(f"{Constants.channelPrefix}{arity}")


class EmbedSynchronism(Encoding):
    label = "EmbedA2S"

    def accepts(self, source):
        return not source.is_synchronous

    def target_for(self, source):
        return source.with_(synchronism=Synchronism.S)

    def translate_output(self, proc, fresh):
        return Output(proc.channel, proc.args, Nil())


class EmbedArity(Encoding):
    label = "EmbedM2P"

    def accepts(self, source):
        return not source.is_polyadic

    def target_for(self, source):
        return source.with_(arity=Arity.P)


class EmbedMedium(Encoding):
    label = "EmbedD2C"

    def accepts(self, source):
        return not source.is_channel_based

    def target_for(self, source):
        return source.with_(medium=Medium.C)

    def translate_input(self, proc, fresh):
        return Input(arity_channel(len(proc.patterns)), proc.patterns, self.translate(proc.continuation, fresh))

    def translate_output(self, proc, fresh):
        continuation = None if proc.continuation is None else self.translate(proc.continuation, fresh)
        return Output(arity_channel(len(proc.args)), proc.args, continuation)


class EmbedMatching(Encoding):
    """
    Raise the matching degree

    Args:
        source (LanguageDescriptor): Source language
        matching (Matching): Target degree, at least the source's
    """

    label = "EmbedMatch"

    def __init__(self, source, matching=Matching.I, strict_cond=Constants.strictCond):
        self.m_matching = matching
        super().__init__(source, strict_cond)

    def accepts(self, source):
        return source.matching < self.m_matching

    def target_for(self, source):
        return source.with_(matching=self.m_matching)


def embedding_stages(source, target, strict_cond=Constants.strictCond):
    """
    Embeddings taking `source` to `target`, one per raised coordinate

    Raises:
        EncodingError: when source is not below target
    """
    if not source.leq(target):
        raise EncodingError(f"{source} does not embed into {target}")
    stages = []
    current = source
    if current.matching < target.matching:
        stages.append(EmbedMatching(current, target.matching, strict_cond))
        current = stages[-1].target
    if current.synchronism < target.synchronism:
        stages.append(EmbedSynchronism(current, strict_cond))
        current = stages[-1].target
    if current.arity < target.arity:
        stages.append(EmbedArity(current, strict_cond))
        current = stages[-1].target
    if current.medium < target.medium:
        stages.append(EmbedMedium(current, strict_cond))
        current = stages[-1].target
    return stages


def embed(proc, source, target, strict_cond=Constants.strictCond):
    """
    Embed a process of `source` into `target`

    Raises:
        EncodingError: when source is not below target
    """
    for stage in embedding_stages(source, target, strict_cond):
        proc = stage.encode(proc)
    return proc
