"""Flat connections on mapping tori of the 2-torus.

A flat connection is a fixed point of ``w U`` on ``T x T``, i.e. a point
``A`` of ``t + t`` with ``(w (x) U - 1) A = lam`` for a lattice vector
``lam = (lam_1, lam_2)`` of ``Lambda^R + Lambda^R``. Vectors in ``t + t`` are
stored as length ``2l`` arrays: first factor, then second factor, each in
coroot coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intlinalg
from .errors import DegenerateFixedSet, SingularLattice
from .gausssums import frac_mod1
from .modulargroup import SL2Element
from .rootsystems import RootSystem, WeylElement, pairing


@dataclass(frozen=True, eq=False)
class FixedPointDatum:
    w: WeylElement
    lam: np.ndarray
    a_point: np.ndarray
    cs: Fraction
    eps: int
    absdet: int


def block_action(U: SL2Element, w_matrix) -> np.ndarray:
    """The ``2l x 2l`` matrix of ``w (x) U`` on ``t + t``."""
    w_matrix = intlinalg.int_matrix(w_matrix)
    return np.block([[U.a * w_matrix, U.b * w_matrix], [U.c * w_matrix, U.d * w_matrix]])


def fixed_point_operator(U: SL2Element, w: WeylElement) -> np.ndarray:
    V = block_action(U, w.matrix)
    return V - intlinalg.identity(V.shape[0])


def symplectic_s(x) -> np.ndarray:
    """``S`` acting on ``t + t``: ``(x1, x2) -> (-x2, x1)``."""
    x = np.asarray(x, dtype=object)
    l = x.shape[0] // 2
    return np.concatenate([-x[l:], x[:l]])


def pairing2(rs: RootSystem, x, y):
    """Basic inner product on ``t + t``."""
    l = rs.rank
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    return pairing(rs, x[:l], y[:l]) + pairing(rs, x[l:], y[l:])


def theta_char(rs: RootSystem, lam) -> int:
    """``(-1)^{<lam_1, lam_2>}``: equals 1 on every basis vector ``h_i^{(j)}``."""
    lam = np.asarray(lam, dtype=object)
    l = rs.rank
    return -1 if int(pairing(rs, lam[:l], lam[l:])) % 2 else 1


def factored_absdet(rs: RootSystem, U: SL2Element, w: WeylElement) -> int:
    """``|det(tr U - w - w^{-1})|`` on ``t``."""
    B = U.trace * intlinalg.identity(rs.rank) - w.matrix - w.inverse_matrix
    return abs(intlinalg.det(B))


def _operator(rs, U, w):
    B = fixed_point_operator(U, w)
    if intlinalg.det(B) == 0:
        raise DegenerateFixedSet(
            f"w (x) U - 1 is singular for U={U}, w={w.matrix.tolist()} in {rs.name}",
            monodromy=U,
            weyl=w,
        )
    return B


def _cs_from(rs, B, lam) -> Fraction:
    lam = np.asarray(lam, dtype=object)
    x = intlinalg.solve_rational(B, lam)
    q = -Fraction(pairing2(rs, x, symplectic_s(lam))) / 2
    if theta_char(rs, lam) == -1:
        q += Fraction(1, 2)
    return frac_mod1(q)


def cs_invariant(rs: RootSystem, U: SL2Element, w: WeylElement, lam) -> Fraction:
    """Chern-Simons invariant (mod 1) of the flat connection labelled by ``lam``.

    ``-1/2 <(wU - 1)^{-1} lam, S lam>``, shifted by 1/2 when the theta
    characteristic of ``lam`` is -1.
    """
    return _cs_from(rs, _operator(rs, U, w), lam)


def fixed_points(rs: RootSystem, U: SL2Element, w: WeylElement) -> list[FixedPointDatum]:
    B = _operator(rs, U, w)
    absdet = abs(intlinalg.det(B))
    if absdet != factored_absdet(rs, U, w):
        raise AssertionError(f"|det(w (x) U - 1)| = {absdet} disagrees with the trace factorization")
    out = []
    try:
        reps = intlinalg.coset_representatives(B)
    except SingularLattice as exc:  # pragma: no cover - det checked above
        raise DegenerateFixedSet(str(exc), monodromy=U, weyl=w) from exc
    for lam in reps:
        a_point = intlinalg.solve_rational(B, lam)
        out.append(
            FixedPointDatum(
                w=w,
                lam=lam,
                a_point=a_point,
                cs=_cs_from(rs, B, lam),
                eps=theta_char(rs, lam),
                absdet=absdet,
            )
        )
    return out
