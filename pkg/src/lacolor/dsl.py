"""Recursive-descent parser for group expressions.

    group := "Z" | "prod(" group "," group ")" | "free(" group "," group ")"
           | "hnn(" group "," auto ")"
    auto  := "id" | "inv"

Whitespace is ignored between tokens. Errors carry 1-based line and column.
"""
from __future__ import annotations

from typing import Tuple

from .groups import Free, GroupSpec, Hnn, Prod, Z


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        line = text.count("\n", 0, offset) + 1
        col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.offset = offset


class SpecSemanticError(SpecSyntaxError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def error(self, message: str, offset: int = None) -> SpecSyntaxError:
        return SpecSyntaxError(message, self.text, self.pos if offset is None else offset)

    def word(self) -> Tuple[str, int]:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos], start

    def expect(self, ch: str) -> None:
        self.skip()
        if self.text[self.pos:self.pos + 1] != ch:
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def group(self) -> GroupSpec:
        name, start = self.word()
        if name == "Z":
            return Z()
        if name in ("prod", "free"):
            self.expect("(")
            left = self.group()
            self.expect(",")
            right = self.group()
            self.expect(")")
            return Prod(left, right) if name == "prod" else Free(left, right)
        if name == "hnn":
            self.expect("(")
            self.skip()
            base_at = self.pos
            base = self.group()
            self.expect(",")
            auto, auto_at = self.word()
            if auto not in ("id", "inv"):
                raise self.error("expected 'id' or 'inv'", auto_at)
            self.expect(")")
            if not isinstance(base, Z):
                raise SpecSemanticError(
                    f"hnn over {base} is unsupported (base must be Z)", self.text, base_at
                )
            return Hnn(base, auto)
        if not name:
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected a group expression, found {found!r}", start)
        raise self.error(f"unknown constructor {name!r}", start)


def parse_spec(text: str) -> GroupSpec:
    p = _Parser(text)
    spec = p.group()
    p.skip()
    if p.pos != len(text):
        raise p.error("unexpected trailing input")
    return spec


def format_spec(spec: GroupSpec) -> str:
    return str(spec)
