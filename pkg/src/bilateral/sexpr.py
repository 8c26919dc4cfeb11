"""Minimal s-expression reader that keeps line/column positions.

Supports ``;`` line comments, double-quoted strings with backslash escapes,
and bare atoms.  Parentheses are the only brackets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ParseError


@dataclass(frozen=True)
class Atom:
    text: str
    quoted: bool
    line: int
    col: int

    def __str__(self) -> str:
        return f'"{self.text}"' if self.quoted else self.text


@dataclass(frozen=True)
class SList:
    items: tuple[Node, ...]
    line: int
    col: int

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom) and not self.items[0].quoted:
            return self.items[0].text
        return None


Node = Union[Atom, SList]

_DELIMS = set("()\";") | set(" \t\r\n")


def read_all(text: str) -> list[Node]:
    """Parse every top-level form in ``text``."""
    pos = 0
    line, col = 1, 1
    n = len(text)
    stack: list[tuple[list[Node], int, int]] = []
    top: list[Node] = []

    def advance(ch: str) -> None:
        nonlocal line, col
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1

    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            advance(ch)
            pos += 1
        elif ch == ";":
            while pos < n and text[pos] != "\n":
                pos += 1
                col += 1
        elif ch == "(":
            stack.append(([], line, col))
            advance(ch)
            pos += 1
        elif ch == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else top).append(node)
            advance(ch)
            pos += 1
        elif ch == '"':
            l0, c0 = line, col
            advance(ch)
            pos += 1
            buf = []
            while True:
                if pos >= n:
                    raise ParseError("unterminated string", l0, c0)
                ch = text[pos]
                if ch == "\\" and pos + 1 < n:
                    buf.append(text[pos + 1])
                    advance(ch)
                    advance(text[pos + 1])
                    pos += 2
                    continue
                advance(ch)
                pos += 1
                if ch == '"':
                    break
                buf.append(ch)
            (stack[-1][0] if stack else top).append(Atom("".join(buf), True, l0, c0))
        else:
            l0, c0 = line, col
            start = pos
            while pos < n and text[pos] not in _DELIMS:
                advance(text[pos])
                pos += 1
            (stack[-1][0] if stack else top).append(Atom(text[start:pos], False, l0, c0))
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unbalanced '('", l0, c0)
    return top


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
