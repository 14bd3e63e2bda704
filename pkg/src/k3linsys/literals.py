"""Parser and printer for ASCII system literals like L2(3;2^4,1).

Grammar (whitespace insignificant, all integers non-negative decimal):

    system := "L" INT "(" INT (";" mults)? ")"
    mults  := mult ("," mult)*
    mult   := INT ("^" INT)?

"m^r" abbreviates multiplicity m repeated r times, mirroring the exponent
shorthand of the usual L^n(d, m_1, ..., m_r) notation; the degree is set
off with ';' so it cannot be mistaken for the first multiplicity.  Parse
errors carry the byte offset of the first offending character.  Printing
emits one canonical form per system: multiplicities sorted non-increasing,
zeros dropped, runs compressed with '^'.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import LinearSystemSpec, normalize
from .lattice import DivisorClass, SurfaceParams


class LiteralSyntaxError(ValueError):
    """Malformed system literal; `position` is the byte offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (byte {position})")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class SystemLiteral:
    """A parsed literal: source text plus (n, d, multiplicity runs).

    Runs are (value, count) pairs in source order, zeros included, so the
    written point positions survive; `to_spec` normalizes them away.
    """

    source: str
    n: int
    d: int
    runs: tuple[tuple[int, int], ...] = ()

    def multiplicities(self) -> tuple[int, ...]:
        """Expanded multiplicities in source order, zeros kept."""
        out = []
        for value, count in self.runs:
            out.extend([value] * count)
        return tuple(out)

    def to_spec(self) -> LinearSystemSpec:
        """Canonical spec: zeros dropped, sorted non-increasing."""
        return normalize(self.n, self.d, self.multiplicities())

    def divisor_class(self) -> DivisorClass:
        """Lattice class with multiplicities placed positionally as written."""
        return DivisorClass(SurfaceParams(self.n), self.d, self.multiplicities())

    def canonical(self) -> str:
        return self.to_spec().literal()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str, rule: str) -> None:
        self.skip_ws()
        if self.peek() != char:
            raise LiteralSyntaxError(
                f"expected '{char}' {rule}, found {self._found()}", self.pos
            )
        self.pos += 1

    def integer(self, rule: str) -> tuple[int, int]:
        """Read a non-negative decimal INT; returns (value, start offset)."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise LiteralSyntaxError(
                f"expected integer {rule}, found {self._found()}", start
            )
        return int(self.text[start : self.pos]), start

    def _found(self) -> str:
        return f"{self.peek()!r}" if self.peek() else "end of input"


def parse_literal(text: str) -> SystemLiteral:
    """Parse a system literal, validating n is even and at least 2.

    Raises LiteralSyntaxError with the byte offset of the first error; the
    grammar admits no signs, so negative numbers are syntax errors at the
    '-' character.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    if sc.peek() != "L":
        raise LiteralSyntaxError(f"expected 'L' at start of system, found {sc._found()}", sc.pos)
    sc.pos += 1
    n, n_pos = sc.integer("for the surface degree n")
    if n % 2 != 0:
        raise LiteralSyntaxError("n must be even (n = 2g-2)", n_pos)
    if n < 2:
        raise LiteralSyntaxError("n must be at least 2", n_pos)
    sc.expect("(", "before the degree")
    d, _ = sc.integer("for the degree d")
    runs = []
    sc.skip_ws()
    if sc.peek() == ";":
        sc.pos += 1
        while True:
            value, _ = sc.integer("for a multiplicity")
            count = 1
            sc.skip_ws()
            if sc.peek() == "^":
                sc.pos += 1
                count, _ = sc.integer("for a repeat count after '^'")
            runs.append((value, count))
            sc.skip_ws()
            if sc.peek() != ",":
                break
            sc.pos += 1
    sc.expect(")", "to close the system")
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise LiteralSyntaxError(f"unexpected trailing input {sc._found()}", sc.pos)
    return SystemLiteral(source=text, n=n, d=d, runs=tuple(runs))
