"""
Recursive-descent parser for processes, terms and patterns

Grammar, loosest first:

    process  := prefix ('|' prefix)*
    prefix   := '0' | 'ok' | 'new' NAME '.' prefix | '!' prefix
              | 'if' term '=' term 'then' prefix ['else' prefix]
              | [QUOTE term] '<' terms '>' ['.' prefix]
              | NAME '(' patterns ')' '.' prefix
              | QUOTE term '(' patterns ')' '.' prefix
              | '(' patterns ')' '.' prefix
              | '(' process ')'
    term     := tatom ('*' tatom)*
    tatom    := NAME | '(' term ')'
    pattern  := patom ('*' patom)*
    patom    := NAME | '=' tatom | '(' pattern ')'

QUOTE is the apostrophe introducing a compound channel. `*` and `|` associate to the left and `else` belongs to the nearest `if`.
"""

from patcalc.models.process import (
    Cond,
    Input,
    Nil,
    Ok,
    Output,
    Par,
    Repl,
    Restrict,
    conforms,
)
from patcalc.models.term import (
    Binding,
    Compound,
    CompoundPattern,
    Leaf,
    name_match,
    sequence_bindings,
)
from patcalc.syntax.lexer import tokenize
from patcalc.utils.constants import Constants
from patcalc.utils.errors import (
    ConformanceError,
    ParseError,
    ReservedNameError,
    WellFormednessError,
)


class Parser:
    """
    Parser over one token stream

    Args:
        text (str): Source text
        allow_reserved (bool): Accept `#` names
    """

    def __init__(self, text, allow_reserved=False):
        self.m_tokens = tokenize(text)
        self.m_pos = 0
        self.m_allow_reserved = allow_reserved

    def peek(self, offset=0):
        return self.m_tokens[min(self.m_pos + offset, len(self.m_tokens) - 1)]

    def advance(self):
        tok = self.m_tokens[self.m_pos]
        if tok.kind != "EOF":
            self.m_pos += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what or kind.lower()}", tok)
        return self.advance()

    def error(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.column)

    def name(self):
        tok = self.expect("NAME", "a name")
        if not self.m_allow_reserved and tok.text.startswith(Constants.reservedPrefix):
            raise ReservedNameError(f"reserved name {tok.text} in source text", tok.line, tok.column)
        return tok.text

    def finish(self, result):
        if self.peek().kind != "EOF":
            raise self.error("unexpected trailing input")
        return result

    def process(self):
        result = self.prefix()
        while self.peek().kind == "BAR":
            self.advance()
            result = Par(result, self.prefix())
        return result

    def prefix(self):
        tok = self.peek()
        kind = tok.kind
        if kind == "ZERO":
            self.advance()
            return Nil()
        if kind == "OK":
            self.advance()
            return Ok()
        if kind == "NEW":
            self.advance()
            bound = self.name()
            self.expect("DOT", "'.'")
            return Restrict(bound, self.prefix())
        if kind == "BANG":
            self.advance()
            return Repl(self.prefix())
        if kind == "IF":
            return self.conditional()
        if kind == "LANGLE":
            return self.output(None)
        if kind == "QUOTE":
            self.advance()
            channel = self.term()
            if self.peek().kind == "LANGLE":
                return self.output(channel)
            if self.peek().kind == "LPAREN":
                return self.input(channel)
            raise self.error("expected '<' or '(' after channel term")
        if kind == "NAME":
            channel = Leaf(self.name())
            if self.peek().kind != "LPAREN":
                raise self.error(f"expected '(' after channel {channel.name}")
            return self.input(channel)
        if kind == "LPAREN":
            if self.opens_input():
                return self.input(None)
            self.advance()
            inner = self.process()
            self.expect("RPAREN", "')'")
            return inner
        raise self.error("expected a process")

    def opens_input(self):
        """A parenthesis followed, after its match, by '.' starts a dataspace input"""
        depth = 0
        offset = 0
        while True:
            tok = self.peek(offset)
            if tok.kind == "EOF":
                return False
            if tok.kind == "LPAREN":
                depth += 1
            elif tok.kind == "RPAREN":
                depth -= 1
                if depth == 0:
                    return self.peek(offset + 1).kind == "DOT"
            offset += 1

    def conditional(self):
        self.expect("IF")
        lhs = self.term()
        self.expect("EQ", "'='")
        rhs = self.term()
        self.expect("THEN", "'then'")
        then = self.prefix()
        otherwise = Nil()
        if self.peek().kind == "ELSE":
            self.advance()
            otherwise = self.prefix()
        return Cond(lhs, rhs, then, otherwise)

    def output(self, channel):
        self.expect("LANGLE", "'<'")
        args = [self.term()]
        while self.peek().kind == "COMMA":
            self.advance()
            args.append(self.term())
        self.expect("RANGLE", "'>'")
        continuation = None
        if self.peek().kind == "DOT":
            self.advance()
            continuation = self.prefix()
        return Output(channel, tuple(args), continuation)

    def input(self, channel):
        start = self.expect("LPAREN", "'('")
        patterns = [self.pattern()]
        while self.peek().kind == "COMMA":
            self.advance()
            patterns.append(self.pattern())
        self.expect("RPAREN", "')'")
        bound = sequence_bindings(patterns)
        repeated = sorted({n for n in bound if bound.count(n) > 1})
        if repeated:
            raise WellFormednessError(
                f"input binds {', '.join(repeated)} more than once", start.line, start.column
            )
        self.expect("DOT", "'.' after input patterns")
        return Input(channel, tuple(patterns), self.prefix())

    def term(self):
        result = self.term_atom()
        while self.peek().kind == "STAR":
            self.advance()
            result = Compound(result, self.term_atom())
        return result

    def term_atom(self):
        if self.peek().kind == "LPAREN":
            self.advance()
            inner = self.term()
            self.expect("RPAREN", "')'")
            return inner
        return Leaf(self.name())

    def pattern(self):
        result = self.pattern_atom()
        while self.peek().kind == "STAR":
            self.advance()
            result = CompoundPattern(result, self.pattern_atom())
        return result

    def pattern_atom(self):
        kind = self.peek().kind
        if kind == "EQ":
            self.advance()
            return name_match(self.term_atom())
        if kind == "LPAREN":
            self.advance()
            inner = self.pattern()
            self.expect("RPAREN", "')'")
            return inner
        return Binding(self.name())


def parse_process(text, language=None, allow_reserved=False, strict_cond=Constants.strictCond):
    """
    Parse process text

    Args:
        text (str): Source text
        language (LanguageDescriptor | None): Check conformance when given
        allow_reserved (bool): Accept `#` names
        strict_cond (bool): Conformance option for conditionals

    Returns:
        Process: The syntax tree

    Raises:
        ParseError: on malformed text, a reserved name or a repeated binder
        ConformanceError: when the process is not a term of `language`
    """
    parser = Parser(text, allow_reserved)
    proc = parser.finish(parser.process())
    if language is not None:
        violations = conforms(proc, language, strict_cond)
        if violations:
            raise ConformanceError(language, violations)
    return proc


def parse_term(text, allow_reserved=False):
    parser = Parser(text, allow_reserved)
    return parser.finish(parser.term())


def parse_pattern(text, allow_reserved=False):
    parser = Parser(text, allow_reserved)
    return parser.finish(parser.pattern())
