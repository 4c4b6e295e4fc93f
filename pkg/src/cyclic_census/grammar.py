"""Text grammar for group specs.

::

    expr  := term ("x" term)*            left-associative direct product
    term  := "(" expr ")" | atom
    atom  := "C" INT                     cyclic of order n
           | "D" INT                     dihedral of order 2n (NOT order n)
           | "Dic" INT                   dicyclic of order 4n
           | "Q" INT                     generalized quaternion of order n = 2^j >= 8
           | "Ab[" INT ("," INT)* "]"    abelian, invariant factors d1 | d2 | ...
           | "SD(" INT "," INT ";" INT ")"   C_m x| C_n, generator acts by a -> a^k
           | "file:" PATH                Cayley table file

Examples: ``C12``, ``D6`` (order 12), ``Q16`` (= ``Dic4``), ``Ab[2,4,8]``,
``SD(3,8;2)``, ``C5 x D4``.  ``str(spec)`` prints the canonical form and
``parse(str(spec)) == spec``.
"""

from __future__ import annotations

import re

from .errors import SpecSyntaxError
from .specs import Abelian, CayleyFile, Cyclic, Dicyclic, Dihedral, GroupSpec, Product, SemidirectCyclic

_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise SpecSyntaxError(msg, self.text, (self.pos if pos is None else pos) + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.error(f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def integer(self, signed: bool = False) -> int:
        m = _INT.match(self.text, self.pos)
        if not m or (not signed and m.group().startswith("-")):
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> GroupSpec:
        spec = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return spec

    def expr(self) -> GroupSpec:
        left = self.term()
        while True:
            save = self.pos
            self.skip_ws()
            if self.peek("x") or self.peek("×"):
                self.pos += 1
                left = Product(left, self.term())
            else:
                self.pos = save
                return left

    def term(self) -> GroupSpec:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("expected a group spec, found end of input")
        if self.peek("("):
            self.pos += 1
            inner = self.expr()
            self.skip_ws()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self) -> GroupSpec:
        start = self.pos
        if self.peek("file:"):
            self.pos += 5
            m = re.compile(r"[^\s()]+").match(self.text, self.pos)
            if not m:
                self.error("expected a path after 'file:'")
            self.pos = m.end()
            return CayleyFile(m.group())
        if self.peek("Dic"):
            self.pos += 3
            return Dicyclic(self.integer())
        if self.peek("Ab["):
            self.pos += 3
            factors = [self.integer()]
            while self.peek(","):
                self.pos += 1
                factors.append(self.integer())
            self.expect("]")
            return Abelian(tuple(factors))
        if self.peek("SD("):
            self.pos += 3
            m = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect(";")
            k = self.integer(signed=True)
            self.expect(")")
            return SemidirectCyclic(m, n, k)
        if self.peek("C"):
            self.pos += 1
            return Cyclic(self.integer())
        if self.peek("D"):
            self.pos += 1
            return Dihedral(self.integer())
        if self.peek("Q"):
            self.pos += 1
            num_pos = self.pos
            n = self.integer()
            if n < 8 or n & (n - 1):
                self.error(f"Q{n}: generalized quaternion order must be a power of 2, at least 8", num_pos)
            return Dicyclic(n // 4)
        self.error("expected one of C, D, Dic, Q, Ab[, SD(, file:", start)


def parse(text: str) -> GroupSpec:
    """Parse a spec; raises SpecSyntaxError carrying a 1-based column."""
    return _Parser(text).parse()


def format_spec(spec: GroupSpec) -> str:
    return str(spec)
