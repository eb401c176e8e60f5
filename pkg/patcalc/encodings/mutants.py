"""
Deliberately broken variants of the synchrony encoding

Each one violates at least one validity criterion, which makes them the
negative controls of the validity harness.
"""

from patcalc.encodings.synch import SynchEncoding
from patcalc.models.process import Input, Nil, Output, Par, Repl, free_names_proc
from patcalc.models.term import Leaf, name_match


class DropAckSynch(SynchEncoding):
    """The input never returns the acknowledgement, leaving outputs stuck"""

    label = "Synch[drop-ack]"

    def input_body(self, proc, ack, fresh):
        return self.translate(proc.continuation, fresh)


class DropOkSynch(SynchEncoding):
    """Success markers are translated to `0`"""

    label = "Synch[drop-ok]"

    def translate_ok(self, proc):
        return Nil()


class LoopAckSynch(SynchEncoding):
    """The input keeps echoing the acknowledgement forever"""

    label = "Synch[loop-ack]"

    def input_body(self, proc, ack, fresh):
        channel = None if proc.channel is None else Leaf(ack)
        echo = Repl(Input(channel, (name_match(Leaf(ack)),), Output(channel, (Leaf(ack),), None)))
        return Par(Par(self.acknowledgement(proc, ack), echo), self.translate(proc.continuation, fresh))


class LeakNameSynch(SynchEncoding):
    """Parallel composition emits a free name of its left part"""

    label = "Synch[leak-name]"

    def translate_par(self, proc, fresh):
        encoded = super().translate_par(proc, fresh)
        names = sorted(free_names_proc(proc.left))
        if not names:
            return encoded
        leaked = Leaf(names[0])
        channel = leaked if self.target.is_channel_based else None
        return Par(encoded, Output(channel, (leaked,), None))


MUTANTS = {
    "drop-ack": DropAckSynch,
    "drop-ok": DropOkSynch,
    "loop-ack": LoopAckSynch,
    "leak-name": LeakNameSynch,
}
