"""
Polyadic into monadic communication

Tuples are flattened into one compound tagged by the reserved name `#r`,
which inputs match exactly:

    <t1, ..., tn>    ->  <#r*t1*...*tn>
    (p1, ..., pn).P  ->  (=#r*p1*...*pn).P'
"""

from patcalc.encodings.encoding import Encoding
from patcalc.models.language import Arity, Matching
from patcalc.models.process import Input, Output, free_names_proc
from patcalc.models.term import CompoundPattern, Leaf, compound, name_match
from patcalc.utils.constants import Constants
from patcalc.utils.errors import EncodingError


class ArityEncoding(Encoding):
    label = "Arity"

    def accepts(self, source):
        return source.is_polyadic

    def target_for(self, source):
        return source.with_(arity=Arity.M, matching=Matching.I)

    def check(self, proc):
        if Constants.arityTag in free_names_proc(proc):
            raise EncodingError(f"{Constants.arityTag} is free in the source process")

    def translate_input(self, proc, fresh):
        pattern = name_match(Leaf(Constants.arityTag))
        for p in proc.patterns:
            pattern = CompoundPattern(pattern, p)
        return Input(proc.channel, (pattern,), self.translate(proc.continuation, fresh))

    def translate_output(self, proc, fresh):
        flat = compound(Leaf(Constants.arityTag), *proc.args)
        continuation = None if proc.continuation is None else self.translate(proc.continuation, fresh)
        return Output(proc.channel, (flat,), continuation)


def encode_arity(proc, language, strict_cond=Constants.strictCond):
    return ArityEncoding(language, strict_cond).encode(proc)
