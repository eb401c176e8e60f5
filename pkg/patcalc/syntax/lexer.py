"""
Tokenizer for the ASCII process syntax
"""

import re
from dataclasses import dataclass

from patcalc.utils.errors import ParseError

KEYWORDS = {"new": "NEW", "if": "IF", "then": "THEN", "else": "ELSE", "ok": "OK"}

PUNCTUATION = {
    "|": "BAR",
    "!": "BANG",
    ".": "DOT",
    ",": "COMMA",
    "(": "LPAREN",
    ")": "RPAREN",
    "<": "LANGLE",
    ">": "RANGLE",
    "'": "QUOTE",
    "*": "STAR",
    "=": "EQ",
}

TOKEN_PATTERN = re.compile(
    r"(?P<space>[ \t\r\n]+)"
    r"|(?P<zero>0(?![A-Za-z0-9_]))"
    r"|(?P<name>[A-Za-z#][A-Za-z0-9_]*)"
    r"|(?P<punct>[|!.,()<>'*=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    """
    Split source text into tokens

    Args:
        text (str): Process, term or pattern text

    Returns:
        list[Token]: Tokens followed by a single EOF token

    Raises:
        ParseError: on a character that starts no token
    """
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        found = TOKEN_PATTERN.match(text, pos)
        column = pos - line_start + 1
        if found is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = found.lastgroup
        lexeme = found.group()
        if kind == "space":
            newlines = lexeme.count("\n")
            if newlines:
                line += newlines
                line_start = pos + lexeme.rindex("\n") + 1
        elif kind == "zero":
            tokens.append(Token("ZERO", lexeme, line, column))
        elif kind == "name":
            tokens.append(Token(KEYWORDS.get(lexeme, "NAME"), lexeme, line, column))
        else:
            tokens.append(Token(PUNCTUATION[lexeme], lexeme, line, column))
        pos = found.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens
