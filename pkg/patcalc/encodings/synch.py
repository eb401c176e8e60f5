"""
Synchronous into asynchronous communication

An output sends a fresh acknowledgement name along with its first term and
waits for it to come back; the input returns it before continuing.

    <t1, ..., tn>.Q   ->  new x.(<x*t1, ..., tn> | (=x).Q')
    (p1, ..., pn).P   ->  (x*p1, ..., pn).(<x> | P')

In channel languages the acknowledgement travels on `x` itself.
"""

from patcalc.encodings.encoding import Encoding
from patcalc.models.language import Matching, Synchronism
from patcalc.models.process import Input, Output, Par, Restrict
from patcalc.models.term import Binding, Compound, CompoundPattern, Leaf, name_match
from patcalc.utils.constants import Constants


class SynchEncoding(Encoding):
    label = "Synch"
    step_profile = 2

    def accepts(self, source):
        return source.is_synchronous

    def target_for(self, source):
        return source.with_(synchronism=Synchronism.A, matching=Matching.I)

    def acknowledgement(self, proc, ack):
        """The output returning the acknowledgement name"""
        channel = None if proc.channel is None else Leaf(ack)
        return Output(channel, (Leaf(ack),), None)

    def input_body(self, proc, ack, fresh):
        return Par(self.acknowledgement(proc, ack), self.translate(proc.continuation, fresh))

    def translate_input(self, proc, fresh):
        ack = fresh.next()
        first, rest = proc.patterns[0], proc.patterns[1:]
        patterns = (CompoundPattern(Binding(ack), first),) + rest
        return Input(proc.channel, patterns, self.input_body(proc, ack, fresh))

    def translate_output(self, proc, fresh):
        ack = fresh.next()
        args = (Compound(Leaf(ack), proc.args[0]),) + proc.args[1:]
        send = Output(proc.channel, args, None)
        wait = Input(
            None if proc.channel is None else Leaf(ack),
            (name_match(Leaf(ack)),),
            self.translate(proc.continuation, fresh),
        )
        return Restrict(ack, Par(send, wait))


def encode_synch(proc, language, strict_cond=Constants.strictCond):
    """Encode a process of a synchronous language into its asynchronous counterpart"""
    return SynchEncoding(language, strict_cond).encode(proc)
