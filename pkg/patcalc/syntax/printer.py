"""
Pretty printer producing text the parser reads back to an equal tree
"""

from patcalc.models.process import (
    Cond,
    Hole,
    Input,
    Nil,
    Ok,
    Output,
    Par,
    Repl,
    Restrict,
)
from patcalc.models.term import Binding, Compound, Leaf, NameMatch

ASCII = {
    "star": "*",
    "new": "new ",
    "bang": "!",
    "ok": "ok",
    "open": "<",
    "close": ">",
    "bar": " | ",
}

UNICODE = {
    "star": "•",
    "new": "ν ",
    "bang": "∗",
    "ok": "✓",
    "open": "⟨",
    "close": "⟩",
    "bar": " ∣ ",
}


class _Printer:
    def __init__(self, unicode=False):
        self.m_symbols = UNICODE if unicode else ASCII
        self.m_unicode = unicode

    def term(self, t):
        if isinstance(t, Leaf):
            return t.name
        right = self.term(t.right)
        if isinstance(t.right, Compound):
            right = f"({right})"
        return f"{self.term(t.left)}{self.m_symbols['star']}{right}"

    def pattern(self, p):
        if isinstance(p, Binding):
            return p.name
        if isinstance(p, NameMatch):
            if self.m_unicode:
                return f"⌜{p.subject.name}⌝"
            return f"={p.subject.name}"
        right = self.pattern(p.right)
        if not isinstance(p.right, (Binding, NameMatch)):
            right = f"({right})"
        return f"{self.pattern(p.left)}{self.m_symbols['star']}{right}"

    def channel(self, t):
        if isinstance(t, Leaf):
            return t.name
        return f"'{self.term(t)}"

    def process(self, proc):
        if isinstance(proc, Nil):
            return "0"
        if isinstance(proc, Ok):
            return self.m_symbols["ok"]
        if isinstance(proc, Hole):
            return f"[{proc.index}]"
        if isinstance(proc, Par):
            right = self.process(proc.right)
            if isinstance(proc.right, Par):
                right = f"({right})"
            return f"{self.process(proc.left)}{self.m_symbols['bar']}{right}"
        if isinstance(proc, Restrict):
            return f"{self.m_symbols['new']}{proc.name}.{self.body(proc.body)}"
        if isinstance(proc, Repl):
            return f"{self.m_symbols['bang']}{self.body(proc.body)}"
        if isinstance(proc, Output):
            args = ", ".join(self.term(a) for a in proc.args)
            head = "" if proc.channel is None else "'" + self.term(proc.channel)
            text = f"{head}{self.m_symbols['open']}{args}{self.m_symbols['close']}"
            if proc.continuation is not None:
                text += "." + self.body(proc.continuation)
            return text
        if isinstance(proc, Input):
            pats = ", ".join(self.pattern(p) for p in proc.patterns)
            head = "" if proc.channel is None else self.channel(proc.channel)
            return f"{head}({pats}).{self.body(proc.continuation)}"
        if isinstance(proc, Cond):
            then = self.body(proc.then)
            has_else = not isinstance(proc.otherwise, Nil)
            if has_else and _dangles(proc.then) and not isinstance(proc.then, Par):
                then = f"({then})"
            text = f"if {self.term(proc.lhs)} = {self.term(proc.rhs)} then {then}"
            if has_else:
                text += f" else {self.body(proc.otherwise)}"
            return text
        raise TypeError(f"not a process: {proc!r}")

    def body(self, proc):
        text = self.process(proc)
        if isinstance(proc, Par):
            return f"({text})"
        return text


def _dangles(proc):
    """True when the printed process ends in a conditional without else"""
    while True:
        if isinstance(proc, Cond):
            if isinstance(proc.otherwise, Nil):
                return True
            proc = proc.otherwise
        elif isinstance(proc, (Restrict, Repl)):
            proc = proc.body
        elif isinstance(proc, Input):
            proc = proc.continuation
        elif isinstance(proc, Output) and proc.continuation is not None:
            proc = proc.continuation
        else:
            return False


def pretty(proc, unicode=False):
    """
    Render a process

    Args:
        proc (Process): Process to print
        unicode (bool): Use mathematical symbols; the result is display only

    Returns:
        str: Text such that parse(pretty(P)) == P for the ASCII form
    """
    return _Printer(unicode).process(proc)


def pretty_term(t, unicode=False):
    return _Printer(unicode).term(t)


def pretty_pattern(p, unicode=False):
    return _Printer(unicode).pattern(p)


def pretty_subst(sigma):
    """Render `{image/name, ...}` sorted by name"""
    printer = _Printer()
    parts = [f"{printer.term(sigma[name])}/{name}" for name in sorted(sigma)]
    return "{" + ", ".join(parts) + "}"
