"""Tokenizer shared by the polynomial parser and the script language."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AlgebraError


class SyntaxErrorAt(AlgebraError):
    """Syntax error with a 1-based line/column and the expected token set."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += " (expected " + ", ".join(repr(e) for e in self.expected) + ")"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, EOF
    text: str
    line: int
    column: int
    offset: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>\d+)
  | (?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<OP>\*\*|<=|>=|==|[-+*/^(),;{}\[\]=<>])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SyntaxErrorAt(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind in ("INT", "NAME", "OP"):
            tokens.append(Token(kind, chunk, line, pos - line_start + 1, pos))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1, pos))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, k=0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def at(self, *texts) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in texts

    def at_name(self, *names) -> bool:
        tok = self.peek()
        return tok.kind == "NAME" and (not names or tok.text in names)

    def error(self, message, expected=()):
        tok = self.peek()
        shown = tok.text or "end of input"
        return SyntaxErrorAt(f"{message}, got {shown!r}", tok.line, tok.column, expected)

    def expect(self, text) -> Token:
        if not self.at(text):
            raise self.error("unexpected token", [text])
        return self.next()

    def expect_name(self, *names) -> Token:
        if not self.at_name(*names):
            raise self.error("unexpected token", names or ["identifier"])
        return self.next()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "INT":
            raise self.error("unexpected token", ["integer"])
        self.next()
        return int(tok.text)
