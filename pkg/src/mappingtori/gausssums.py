"""Lattice Gauss sums with exact rational phases.

Every exponent in the partition-function formulas is ``2 pi i q`` for a
rational ``q``. Phases are kept as ``Fraction``s reduced mod 1 and only turned
into floating point once, term by term, right before summation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import intlinalg
from .errors import DomainError, IllPosedSum

DEFAULT_TOL = 1e-9


def frac_mod1(q) -> Fraction:
    q = Fraction(q)
    return q - math.floor(q)


def root_of_unity(q) -> complex:
    """``exp(2 pi i q)`` for rational ``q``, evaluated at the representative nearest 0."""
    q = frac_mod1(q)
    if q > Fraction(1, 2):
        q -= 1
    # exact values at the eighth roots keep simple cancellations clean
    if (8 * q).denominator == 1:
        return _EIGHTH[int(8 * q) % 8]
    return cmath.exp(2j * math.pi * float(q))


_S2 = math.sqrt(0.5)
_EIGHTH = [1 + 0j, complex(_S2, _S2), 1j, complex(-_S2, _S2), -1 + 0j, complex(-_S2, -_S2), -1j, complex(_S2, -_S2)]


@dataclass(frozen=True)
class Phase:
    """The unit complex number ``exp(2 pi i q)`` with ``q`` stored exactly in [0, 1)."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", frac_mod1(self.q))

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.q + other.q)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.q - other.q)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.q * n)

    def conjugate(self) -> "Phase":
        return Phase(-self.q)

    def __complex__(self) -> complex:
        return root_of_unity(self.q)

    def __str__(self):
        return f"e(2pi i {self.q})"


def csum(values: Iterable[complex]) -> complex:
    """Correctly rounded complex sum, taken in iteration order."""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def sum_phases(phases: Iterable) -> complex:
    return csum(root_of_unity(q) for q in phases)


def check_coset_invariance(B, q: Callable, reps: Sequence, samples: int = 4) -> None:
    """Verify ``q(x + B e_j) == q(x) mod 1`` on a few representatives.

    Raises ``IllPosedSum`` on failure, which signals a wrong quadratic form
    or a level for which the form does not descend to the quotient.
    """
    n = B.shape[0]
    picks = list(reps[:samples]) + list(reps[-samples:])
    shifts = [B[:, j] for j in range(n)] + [B @ np.ones(n, dtype=object)]
    for x in picks:
        base = Fraction(q(x))
        for shift in shifts:
            for s in (1, -1):
                diff = Fraction(q(x + s * shift)) - base
                if diff.denominator != 1:
                    raise IllPosedSum(
                        f"phase not constant on cosets: q({list(x)}) and q({list(x + s * shift)}) differ by {diff}"
                    )


def lattice_phases(B, q: Callable, check: bool = True) -> list[Fraction]:
    """Phases ``q(x) mod 1`` for ``x`` over ``coset_representatives(B)``, in order."""
    B = intlinalg.int_matrix(B)
    reps = intlinalg.coset_representatives(B)
    if check:
        check_coset_invariance(B, q, reps)
    return [frac_mod1(q(x)) for x in reps]


def lattice_gauss_sum(B, q: Callable, check: bool = True) -> complex:
    """``sum exp(2 pi i q(x))`` over ``Z^n / B Z^n``."""
    return sum_phases(lattice_phases(B, q, check=check))


def reciprocity_1d(a: int, c: int) -> tuple[complex, complex]:
    """Both sides of the Landsberg-Schaar identity.

    ``sum_{n<c} e^{pi i a n^2 / c}`` and
    ``sqrt(c/a) e^{pi i/4} sum_{n<a} e^{-pi i c n^2 / a}``, each summed
    directly, for ``a, c > 0`` with ``a c`` even.
    """
    if a <= 0 or c <= 0:
        raise DomainError("reciprocity_1d needs a, c > 0")
    if (a * c) % 2:
        raise DomainError(f"reciprocity_1d needs a*c even, got a={a}, c={c}")
    lhs = sum_phases(Fraction(a * n * n, 2 * c) for n in range(c))
    inner = sum_phases(Fraction(-c * n * n, 2 * a) for n in range(a))
    rhs = math.sqrt(c / a) * root_of_unity(Fraction(1, 8)) * inner
    return lhs, rhs
