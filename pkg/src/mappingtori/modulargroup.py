"""Arithmetic in SL(2, Z).

Elements are stored with arbitrary-precision integer entries. The module
covers trace classification, Dedekind sums, the Rademacher phi function and
decomposition into words in the generators ``S = [[0,-1],[1,0]]`` and
``T = [[1,1],[0,1]]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ConventionError, DomainError


def sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SL2Element:
    """An integer 2x2 matrix ``[[a, b], [c, d]]`` of determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"entry {name}={value!r} is not an integer")
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise DomainError(f"determinant is {det}, not 1: {self.rows()}")

    @classmethod
    def from_rows(cls, rows) -> "SL2Element":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "SL2Element":
        return cls(1, 0, 0, 1)

    @classmethod
    def S(cls) -> "SL2Element":
        return cls(0, -1, 1, 0)

    @classmethod
    def T(cls, n: int = 1) -> "SL2Element":
        return cls(1, n, 0, 1)

    @classmethod
    def neg_identity(cls) -> "SL2Element":
        return cls(-1, 0, 0, -1)

    @classmethod
    def TpS(cls, p: int) -> "SL2Element":
        """``T^p S = [[p, -1], [1, 0]]``."""
        return cls(p, -1, 1, 0)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: "SL2Element") -> "SL2Element":
        return SL2Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Element":
        return SL2Element(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Element":
        return SL2Element(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "SL2Element":
        base = self if n >= 0 else self.inverse()
        result = SL2Element.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


class Kind(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def classify(U: SL2Element) -> Kind:
    t = abs(U.trace)
    if t > 2:
        return Kind.HYPERBOLIC
    if t == 2:
        return Kind.PARABOLIC
    return Kind.ELLIPTIC


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(h: int, k: int) -> Fraction:
    """Dedekind sum ``s(h, k) = sum_{n=1}^{k-1} ((n/k)) ((hn/k))``, exactly."""
    if k < 1:
        raise DomainError(f"dedekind_sum needs k >= 1, got {k}")
    total = Fraction(0)
    for n in range(1, k):
        total += _sawtooth(Fraction(n, k)) * _sawtooth(Fraction(h * n, k))
    return total


def rademacher_phi(U: SL2Element, phi_sign: int = 1) -> int:
    """Rademacher's phi function.

    ``b/d`` when ``c == 0``, otherwise ``(a+d)/c - 12 sign(c) s(d, |c|)``.
    ``phi_sign=-1`` flips the overall sign, for comparison against sources
    that use the opposite orientation.
    """
    if phi_sign not in (1, -1):
        raise DomainError("phi_sign must be +1 or -1")
    if U.c == 0:
        value = Fraction(U.b, U.d)
    else:
        value = Fraction(U.a + U.d, U.c) - 12 * sign(U.c) * dedekind_sum(U.d, abs(U.c))
    if value.denominator != 1:
        raise ConventionError(f"Rademacher phi of {U} is not an integer: {value}")
    return phi_sign * int(value)


class Token(NamedTuple):
    """One letter of a generator word: ``S``, ``T`` (with a power) or ``NEG``."""

    name: str
    power: int = 1

    def __str__(self):
        if self.name == "T":
            return f"T^{self.power}"
        return self.name


GeneratorWord = tuple  # tuple[Token, ...]

_S_INV = SL2Element(0, 1, -1, 0)


def token_matrix(token: Token) -> SL2Element:
    if token.name == "S":
        return SL2Element.S()
    if token.name == "T":
        return SL2Element.T(token.power)
    if token.name == "NEG":
        return SL2Element.neg_identity()
    raise DomainError(f"unknown generator {token!r}")


def word_evaluate(word: Iterable[Token]) -> SL2Element:
    result = SL2Element.identity()
    for token in word:
        result = result @ token_matrix(token)
    return result


def word_decompose(U: SL2Element, rounding: str = "floor") -> GeneratorWord:
    """Write ``U`` as ``T^q1 S T^q2 S ... [NEG] T^n``.

    Each step peels ``T^q`` off the left so that ``|a| < |c|`` and then peels
    ``S``, which swaps the first column into the second row and strictly
    lowers ``|c|``. ``rounding`` picks the quotient: ``"floor"`` or
    ``"nearest"``; both give valid words, usually different ones.
    """
    if rounding not in ("floor", "nearest"):
        raise DomainError(f"unknown rounding {rounding!r}")
    tokens: list[Token] = []
    cur = U
    while cur.c != 0:
        if rounding == "floor":
            q = cur.a // cur.c
        else:
            q = round(Fraction(cur.a, cur.c))
        if q:
            tokens.append(Token("T", q))
            cur = SL2Element.T(-q) @ cur
        tokens.append(Token("S"))
        cur = _S_INV @ cur
    if cur.a == -1:
        tokens.append(Token("NEG"))
        cur = -cur
    if cur.b:
        tokens.append(Token("T", cur.b))
    return tuple(tokens)


def format_word(word: Iterable[Token]) -> str:
    return " ".join(str(t) for t in word) or "I"
