"""
Channels into a shared dataspace

The channel becomes the name-matched head of the first term.

    'c<t1, ...>     ->  <c*t1, ...>
    'c(p1, ...).P   ->  (=c*p1, ...).P'
"""

from patcalc.encodings.encoding import Encoding
from patcalc.models.language import Matching, Medium
from patcalc.models.process import Input, Output
from patcalc.models.term import Compound, CompoundPattern, name_match
from patcalc.utils.constants import Constants


class MediumEncoding(Encoding):
    label = "Medium"

    def accepts(self, source):
        return source.is_channel_based

    def target_for(self, source):
        return source.with_(medium=Medium.D, matching=Matching.I)

    def translate_input(self, proc, fresh):
        first = CompoundPattern(name_match(proc.channel), proc.patterns[0])
        patterns = (first,) + proc.patterns[1:]
        return Input(None, patterns, self.translate(proc.continuation, fresh))

    def translate_output(self, proc, fresh):
        args = (Compound(proc.channel, proc.args[0]),) + proc.args[1:]
        continuation = None if proc.continuation is None else self.translate(proc.continuation, fresh)
        return Output(None, args, continuation)


def encode_medium(proc, language, strict_cond=Constants.strictCond):
    """Encode a channel-based process into the dataspace language of the same shape"""
    return MediumEncoding(language, strict_cond).encode(proc)
