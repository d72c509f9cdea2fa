"""Classical root systems in coroot coordinates.

Everything lives in the Cartan subalgebra ``t``, written in the basis of
simple coroots ``h_1, ..., h_l``. The coroot lattice is then ``Z^l``. The
inner product is the basic one (long roots have squared length 2), and a
root ``alpha`` is identified with the vector ``alpha^#`` in ``t`` satisfying
``<alpha^#, x> = alpha(x)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

import numpy as np

from . import intlinalg
from .errors import DomainError

FAMILIES = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def _dual_coxeter(family: str, l: int) -> int:
    return {"A": l + 1, "B": 2 * l - 1, "C": l + 1, "D": 2 * l - 2}[family]


def _simple_root_products(family: str, l: int) -> list[list[Fraction]]:
    """Inner products ``<alpha_i, alpha_j>`` of the simple roots."""
    M = [[Fraction(0)] * l for _ in range(l)]
    if family in ("A", "D"):
        lengths = [Fraction(2)] * l
    elif family == "B":
        lengths = [Fraction(2)] * (l - 1) + [Fraction(1)]
    else:
        lengths = [Fraction(1)] * (l - 1) + [Fraction(2)]
    for i in range(l):
        M[i][i] = lengths[i]
    chain = l - 1 if family != "D" else l - 2
    for i in range(chain):
        # C_l: short-short edges carry -1/2; every other edge carries -1
        both_short = lengths[i] == lengths[i + 1] == 1
        M[i][i + 1] = M[i + 1][i] = Fraction(-1, 2) if both_short else Fraction(-1)
    if family == "D":
        M[l - 3][l - 1] = M[l - 1][l - 3] = Fraction(-1)
    return M


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element acting on coroot coordinates."""

    matrix: np.ndarray
    det: int

    @property
    def key(self) -> tuple:
        return intlinalg.as_key(self.matrix)

    @property
    def inverse_matrix(self) -> np.ndarray:
        return intlinalg.integral_inverse(self.matrix)

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=object)


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    gram: np.ndarray
    cartan: np.ndarray
    simple_root_lengths: tuple
    positive_roots: tuple
    rho: np.ndarray
    h: int
    highest_root: np.ndarray
    weight_to_coroot: np.ndarray
    simple_reflections: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def l(self) -> int:
        return self.rank

    @property
    def n_pos(self) -> int:
        return len(self.positive_roots)

    @property
    def dim(self) -> int:
        return self.rank + 2 * self.n_pos

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return tuple(_weyl_closure(self))

    @property
    def roots(self) -> list[np.ndarray]:
        return [s * a for a in self.positive_roots for s in (1, -1)]

    def __repr__(self):
        return f"RootSystem({self.name})"


def build(family: str, rank: int) -> RootSystem:
    """Root data for ``A_l``, ``B_l``, ``C_l`` or ``D_l``."""
    family = str(family).upper()
    if family not in FAMILIES:
        raise DomainError(f"unsupported family {family!r}; expected one of {FAMILIES}")
    if not isinstance(rank, int) or rank < _MIN_RANK[family]:
        raise DomainError(f"{family}{rank} is not supported (need rank >= {_MIN_RANK[family]})")
    l = rank
    M = _simple_root_products(family, l)
    lengths = [M[i][i] for i in range(l)]
    gram = intlinalg.int_matrix(
        [[4 * M[i][j] / (lengths[i] * lengths[j]) for j in range(l)] for i in range(l)]
    )
    cartan = intlinalg.int_matrix([[2 * M[i][j] / lengths[j] for j in range(l)] for i in range(l)])
    reflections = []
    for i in range(l):
        s = intlinalg.identity(l)
        s[i] = s[i] - cartan[i]
        reflections.append(s)

    proto = RootSystem(
        family=family,
        rank=l,
        gram=gram,
        cartan=cartan,
        simple_root_lengths=tuple(lengths),
        positive_roots=(),
        rho=np.zeros(l, dtype=object),
        h=_dual_coxeter(family, l),
        highest_root=np.zeros(l, dtype=object),
        weight_to_coroot=intlinalg.inverse(gram),
        simple_reflections=tuple(reflections),
    )
    weyl = _weyl_closure(proto)

    simple = []
    for i in range(l):
        v = np.array([Fraction(0)] * l, dtype=object)
        v[i] = lengths[i] / 2
        simple.append(v)
    seen = {}
    for w in weyl:
        for a in simple:
            image = w.matrix @ a
            seen.setdefault(tuple(image.tolist()), image)
    positive = sorted(
        (v for v in seen.values() if all(x >= 0 for x in v)),
        key=lambda v: (_height(v, lengths), tuple(v.tolist())),
    )
    rho = sum(positive, np.array([Fraction(0)] * l, dtype=object)) / 2
    highest = positive[-1]

    rs = RootSystem(
        family=family,
        rank=l,
        gram=gram,
        cartan=cartan,
        simple_root_lengths=tuple(lengths),
        positive_roots=tuple(positive),
        rho=rho,
        h=proto.h,
        highest_root=highest,
        weight_to_coroot=proto.weight_to_coroot,
        simple_reflections=proto.simple_reflections,
    )
    rs.__dict__["weyl_group"] = tuple(weyl)
    _check(rs)
    return rs


def _height(v, lengths) -> Fraction:
    return sum(2 * x / L for x, L in zip(v, lengths))


def _weyl_closure(rs: RootSystem) -> list[WeylElement]:
    """Breadth-first closure of the simple reflections."""
    l = rs.rank
    start = WeylElement(intlinalg.identity(l), 1)
    found = {start.key: start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for s in rs.simple_reflections:
                m = s @ g.matrix
                key = intlinalg.as_key(m)
                if key not in found:
                    elem = WeylElement(m, -g.det)
                    found[key] = elem
                    order.append(elem)
                    nxt.append(elem)
        frontier = nxt
    return order


def _check(rs: RootSystem) -> None:
    l = rs.rank
    G = rs.gram
    if any(G[i, j] != G[j, i] for i in range(l) for j in range(l)):
        raise AssertionError(f"{rs.name}: gram not symmetric")
    if any(G[i, i] % 2 for i in range(l)):
        raise AssertionError(f"{rs.name}: coroot lengths not even")
    if pairing(rs, rs.rho, rs.highest_root) != rs.h - 1:
        raise AssertionError(f"{rs.name}: <rho, theta> != h - 1")
    if any(pairing(rs, rs.rho, _unit(l, i)) != 1 for i in range(l)):
        raise AssertionError(f"{rs.name}: rho is not the sum of fundamental weights")
    if pairing(rs, rs.highest_root, rs.highest_root) != 2:
        raise AssertionError(f"{rs.name}: highest root is not long")


def _unit(l: int, i: int) -> np.ndarray:
    v = np.zeros(l, dtype=object)
    v[i] = 1
    return v


def weyl_elements(rs: RootSystem) -> Iterator[WeylElement]:
    return iter(rs.weyl_group)


def weyl_order(rs: RootSystem) -> int:
    """Closed-form order of the Weyl group."""
    l = rs.rank
    if rs.family == "A":
        return math.factorial(l + 1)
    if rs.family in ("B", "C"):
        return 2**l * math.factorial(l)
    return 2 ** (l - 1) * math.factorial(l)


def pairing(rs: RootSystem, x, y):
    """Basic inner product of two vectors given in coroot coordinates."""
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    return x @ rs.gram @ y


def weight_lattice_index(rs: RootSystem) -> int:
    """Index of the coroot lattice in the weight lattice, ``|det gram|``.

    The weight lattice is the dual of the coroot lattice under the basic
    inner product. For simply laced types this equals ``|det cartan|``; for
    B and C it is twice that.
    """
    return abs(intlinalg.det(rs.gram))


def weight_from_dynkin(rs: RootSystem, labels) -> np.ndarray:
    """Coroot coordinates of the weight with the given Dynkin labels."""
    labels = np.array([Fraction(x) for x in labels], dtype=object)
    return rs.weight_to_coroot @ labels


def dynkin_labels(rs: RootSystem, x) -> np.ndarray:
    """``<x, h_i>`` for each simple coroot; integral exactly on weights."""
    return rs.gram @ np.asarray(x, dtype=object)


def is_weight(rs: RootSystem, x) -> bool:
    return all(Fraction(v).denominator == 1 for v in dynkin_labels(rs, x))


def comarks(rs: RootSystem) -> list[int]:
    """Coroot coordinates of the highest root (it is long, so equals its coroot)."""
    return [int(x) for x in rs.highest_root]


def alcove_weights(rs: RootSystem, r: int) -> Iterator[np.ndarray]:
    """Strictly dominant weights ``lam`` with ``<lam, theta> < r``, in Dynkin-label order."""
    marks = comarks(rs)
    for labels in itertools.product(range(1, r), repeat=rs.rank):
        if sum(m * n for m, n in zip(marks, labels)) < r:
            yield weight_from_dynkin(rs, labels)
