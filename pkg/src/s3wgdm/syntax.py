"""Compact textual syntax for hesitant linguistic elements.

Grammar (whitespace allowed between tokens):

    element   = "{" term ("," term)* "}"
    term      = "s_" number "<o_" number ">"
    number    = ["+"|"-"] (digits ["." digits] | "." digits) [exponent]

Example: ``{s_2<o_0>,s_2<o_1>}``.  Formatting emits the minimal decimal
representation of each subscript (no trailing ``.0``), so parse and
format are mutual inverses on canonical strings.
"""

from __future__ import annotations

import re

from .linguistic import DHLT, DHHFLE, DHLTScale

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class TermSyntaxError(ValueError):
    """Malformed element text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        handled = self.text[:pos]
        line = handled.count("\n") + 1
        column = pos - (handled.rfind("\n") + 1) + 1
        return line, column

    def error(self, message: str, pos: int | None = None) -> TermSyntaxError:
        line, column = self._location(pos)
        return TermSyntaxError(message, line, column)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            found = self.text[self.pos:self.pos + len(literal)] or "end of input"
            raise self.error(f"expected '{literal}', found '{found}'")
        self.pos += len(literal)

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def number(self) -> float:
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if m is None:
            raise self.error("expected a decimal subscript")
        self.pos = m.end()
        return float(m.group())

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_dhhfle(text: str, scale: DHLTScale) -> DHHFLE:
    """Parse one element; raises TermSyntaxError with position on bad input
    and ScaleRangeError when a subscript leaves the scale."""
    s = _Scanner(text)
    s.expect("{")
    terms = [_parse_term(s, scale)]
    while s.peek(","):
        s.expect(",")
        terms.append(_parse_term(s, scale))
    s.expect("}")
    if not s.at_end():
        raise s.error("unexpected trailing input")
    return DHHFLE(terms)


def _parse_term(s: _Scanner, scale: DHLTScale) -> DHLT:
    s.expect("s_")
    phi = s.number()
    s.expect("<o_")
    varphi = s.number()
    s.expect(">")
    scale.check(phi, varphi)
    return DHLT(phi, varphi)


def format_subscript(value: float) -> str:
    """Minimal decimal rendering: '2' not '2.0', '-1.5' stays '-1.5'."""
    out = repr(float(value))
    if out.endswith(".0"):
        out = out[:-2]
    return out


def format_dhhfle(h: DHHFLE, scale: DHLTScale) -> str:
    h.validate(scale)
    parts = (f"s_{format_subscript(t.phi)}<o_{format_subscript(t.varphi)}>"
             for t in h)
    return "{" + ",".join(parts) + "}"
