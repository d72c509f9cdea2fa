"""Partition functions of mapping tori of the 2-torus.

Three independent routes are implemented:

* the fixed-point (SQM) sums, for SU(2) and any monodromy, and for a
  classical group and ``U = T^p S``;
* the Gauss-sum trace formulas, for SU(2) (sum over ``beta mod c``) and for
  a classical group (sum over weights in the alcove, or over cosets of
  ``p - w - w^{-1}``);
* the trace of ``U`` in the level ``k`` representation of SL(2, Z) built
  from the SU(2) ``S`` and ``T`` matrices.

Throughout, ``r = k + h`` and the framing factor ``i^mu`` is taken to be 1.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import intlinalg
from .errors import CUnsupported, DegenerateFixedSet, DomainError, ParabolicMonodromy
from .gausssums import Phase, csum, lattice_phases, root_of_unity, sum_phases
from .modulargroup import Kind, SL2Element, Token, classify, rademacher_phi, sign, word_decompose
from .rootsystems import RootSystem, alcove_weights, is_weight, pairing, weight_lattice_index

ZETA = Phase(Fraction(1, 8))


class Formula(str, enum.Enum):
    SQM = "SQM"
    TRACE_SU2 = "TRACE_SU2"
    RT_SU2 = "RT_SU2"
    SQM_GENERAL = "SQM_GENERAL"
    TRACE_WEIGHTS = "TRACE_WEIGHTS"
    TRACE_COSETS = "TRACE_COSETS"


@dataclass(frozen=True)
class LevelData:
    k: int
    h: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"level must be an integer >= 1, got {self.k!r}")

    @property
    def r(self) -> int:
        return self.k + self.h


@dataclass(frozen=True)
class PartitionResult:
    value: complex
    formula: Formula
    group: str
    monodromy: str
    level: int
    term_count: int

    def __post_init__(self):
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ArithmeticError(f"non-finite partition function {self.value}")

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


class SqmTerm(NamedTuple):
    """One fixed-point contribution: ``sign / sqrt(absdet) * e(phase)``, before ``1/|W|``."""

    sign: int
    absdet: int
    phase: Fraction


def term_multiset(terms) -> Counter:
    return Counter(terms)


def _sum_terms(terms, weyl_order: int) -> complex:
    by_block: dict[tuple[int, int], list[Fraction]] = {}
    for t in terms:
        by_block.setdefault((t.sign, t.absdet), []).append(t.phase)
    parts = [s * sum_phases(ph) / math.sqrt(d) for (s, d), ph in by_block.items()]
    return csum(parts) / weyl_order


# --------------------------------------------------------------------- SU(2)


def _require_not_parabolic(U: SL2Element) -> None:
    if classify(U) is Kind.PARABOLIC:
        raise ParabolicMonodromy(f"U = {U} is parabolic (trace {U.trace})")


def su2_quadratic_form(U: SL2Element, lam) -> int:
    """``-c lam_1^2 + b lam_2^2 + (a - d) lam_1 lam_2``."""
    l1, l2 = int(lam[0]), int(lam[1])
    return -U.c * l1 * l1 + U.b * l2 * l2 + (U.a - U.d) * l1 * l2


def sqm_su2_terms(U: SL2Element, k: int) -> list[SqmTerm]:
    _require_not_parabolic(U)
    r = LevelData(k, 2).r
    terms = []
    for w in (1, -1):
        D = U.trace - 2 * w
        B = [[w * U.a - 1, w * U.b], [w * U.c, w * U.d - 1]]
        phases = lattice_phases(B, lambda lam: Fraction(r * su2_quadratic_form(U, lam), D))
        terms.extend(SqmTerm(w, abs(D), q) for q in phases)
    return terms


def z_sqm_su2(U: SL2Element, k: int) -> PartitionResult:
    """Fixed-point sum for SU(2) with ``w = +-1``."""
    terms = sqm_su2_terms(U, k)
    return PartitionResult(_sum_terms(terms, 2), Formula.SQM, "SU(2)", str(U), k, len(terms))


def su2_trace_inner_phases(U: SL2Element, k: int, branch: int, extended: bool = False) -> list[Fraction]:
    """Phases of the ``(beta, gamma)`` double sum with denominator ``d + a + 2 branch``.

    ``beta`` runs over ``0 .. |c|-1``, or over ``1 .. |c| |d+a+-2|`` when
    ``extended``; ``gamma`` runs over ``1 .. |d+a+-2|``.
    """
    if branch not in (1, -1):
        raise DomainError("branch must be +1 or -1")
    r = LevelData(k, 2).r
    D = U.trace + 2 * branch
    if D == 0:
        raise ParabolicMonodromy(f"U = {U} is parabolic")
    betas = range(1, abs(U.c) * abs(D) + 1) if extended else range(abs(U.c))
    a, b, c, d = U.a, U.b, U.c, U.d
    return [
        Fraction(r * (-c * g * g + (a - d) * g * be + b * be * be), D) % 1
        for be in betas
        for g in range(1, abs(D) + 1)
    ]


def default_k_factor(U: SL2Element, phi_sign: int = 1) -> Phase:
    """``zeta^{-Phi(U)}``; the ``sign(c)`` part of ``K(U)`` is applied separately."""
    return ZETA ** (-rademacher_phi(U, phi_sign))


def z_trace_su2(
    U: SL2Element,
    k: int,
    k_override: Optional[complex] = None,
    phi_sign: int = 1,
) -> PartitionResult:
    """Gauss-sum trace formula for SU(2).

    ``K(U)`` defaults to ``zeta^{-Phi(U)} sign(c)`` with ``zeta = e^{2 pi i/8}``;
    pass ``k_override`` (a unit complex number) to replace it wholesale.
    """
    if U.c == 0:
        raise CUnsupported(f"the trace formula needs c != 0, got U = {U}")
    _require_not_parabolic(U)
    if k_override is None:
        K = complex(default_k_factor(U, phi_sign)) * sign(U.c)
    else:
        K = complex(k_override)
    parts = []
    count = 0
    for branch in (1, -1):
        D = U.trace + 2 * branch
        phases = su2_trace_inner_phases(U, k, branch)
        count += len(phases)
        zeta_part = complex(ZETA ** sign(U.c * D))
        prefactor = branch * K * zeta_part / (2j * abs(U.c) * math.sqrt(abs(D)))
        parts.append(prefactor * sum_phases(phases))
    return PartitionResult(csum(parts), Formula.TRACE_SU2, "SU(2)", str(U), k, count)


def _t_phase(r: int, a: int) -> Fraction:
    return Fraction(a * a, 4 * r) - Fraction(1, 8)


def rt_modular_data_su2(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Level ``k`` SU(2) ``S`` and ``T`` matrices, indexed by ``a = 1 .. k+1``."""
    r = LevelData(k, 2).r
    idx = range(1, r)
    S = np.array([[math.sqrt(2 / r) * math.sin(math.pi * a * b / r) for b in idx] for a in idx], dtype=complex)
    T = np.diag([root_of_unity(_t_phase(r, a)) for a in idx])
    return S, T


def _generator_image(token: Token, S: np.ndarray, r: int) -> np.ndarray:
    if token.name == "S":
        return S
    if token.name == "NEG":
        return S @ S
    return np.diag([root_of_unity(token.power * _t_phase(r, a)) for a in range(1, r)])


def rt_representation_su2(U: SL2Element, k: int, rounding: str = "floor") -> np.ndarray:
    r = LevelData(k, 2).r
    S, _ = rt_modular_data_su2(k)
    M = np.eye(r - 1, dtype=complex)
    for token in word_decompose(U, rounding):
        M = M @ _generator_image(token, S, r)
    return M


def rt_trace_su2(U: SL2Element, k: int, rounding: str = "floor") -> PartitionResult:
    """``Tr R(U)`` via a word in ``S`` and ``T``."""
    M = rt_representation_su2(U, k, rounding)
    value = complex(np.trace(M))
    return PartitionResult(value, Formula.RT_SU2, "SU(2)", str(U), k, k + 1)


# ------------------------------------------------------------- general group


def _weight_vector(rs: RootSystem, lam) -> np.ndarray:
    lam = np.array([Fraction(x) for x in np.asarray(lam, dtype=object).reshape(-1)], dtype=object)
    if lam.shape != (rs.rank,):
        raise DomainError(f"expected a vector of length {rs.rank}")
    if not is_weight(rs, lam):
        raise DomainError(f"{lam.tolist()} is not in the weight lattice of {rs.name}")
    return lam


def g_lambda_terms(rs: RootSystem, p: int, r: int, lam) -> list[tuple[int, Fraction]]:
    """``(det w, <(p - 2w) lam, lam> / 2r)`` for each ``w``."""
    lam = _weight_vector(rs, lam)
    base = p * pairing(rs, lam, lam)
    return [(w.det, Fraction(base - 2 * pairing(rs, w.matrix @ lam, lam), 2 * r)) for w in rs.weyl_group]


def g_lambda(rs: RootSystem, p: int, r: int, lam) -> complex:
    """``g(lam) = sum_w det(w) exp(pi i <(p - 2w) lam, lam> / r)``."""
    return csum(s * root_of_unity(q) for s, q in g_lambda_terms(rs, p, r, lam))


def _general_prefactor(rs: RootSystem, p: int) -> Phase:
    # i^{|Delta_+|} exp(-p pi i <rho, rho> / h)
    return Phase(Fraction(rs.n_pos, 4) - Fraction(p) * pairing(rs, rs.rho, rs.rho) / (2 * rs.h))


def _check_p(p: int) -> None:
    if abs(p) == 2:
        raise ParabolicMonodromy(f"T^{p} S is parabolic")


def z_trace_general_weights(rs: RootSystem, p: int, k: int) -> PartitionResult:
    """``Tr(T^p S)`` as a sum of ``g`` over strictly dominant weights below level ``r``."""
    r = LevelData(k, rs.h).r
    values = []
    count = 0
    for lam in alcove_weights(rs, r):
        for s, q in g_lambda_terms(rs, p, r, lam):
            values.append(s * root_of_unity(q))
            count += 1
    norm = 1 / math.sqrt(weight_lattice_index(rs) * r**rs.rank)
    value = complex(_general_prefactor(rs, p)) * norm * csum(values)
    return PartitionResult(value, Formula.TRACE_WEIGHTS, rs.name, f"T^{p}S", k, count)


def coset_operator(rs: RootSystem, p: int, w) -> np.ndarray:
    """``p - w - w^{-1}`` on the coroot lattice."""
    return p * intlinalg.identity(rs.rank) - w.matrix - w.inverse_matrix


def _coset_blocks(rs: RootSystem, p: int, k: int):
    """Yield ``(w, B_w, phases)`` with phases ``-r/2 <mu, B_w^{-1} mu>`` over ``Lambda^R / B_w``."""
    r = LevelData(k, rs.h).r
    for w in rs.weyl_group:
        B = coset_operator(rs, p, w)
        if intlinalg.det(B) == 0:
            raise DegenerateFixedSet(
                f"p - w - w^-1 is singular for p={p}, w={w.matrix.tolist()} in {rs.name}", weyl=w
            )
        form = rs.gram @ intlinalg.inverse(B)
        phases = lattice_phases(B, lambda mu, form=form: -Fraction(r) * (mu @ form @ mu) / 2)
        yield w, B, phases


def z_trace_general_cosets(rs: RootSystem, p: int, k: int) -> PartitionResult:
    """Reciprocal form of the trace: a Gauss sum over ``Lambda^R / (p - w - w^{-1})`` for each ``w``.

    Each ``w`` carries ``exp(i pi sig(B_w) / 4)`` where ``sig`` is the
    signature of ``B_w`` for the basic inner product; when ``|p| > 2`` this is
    ``l sign(p)``.
    """
    _check_p(p)
    parts = []
    count = 0
    for w, B, phases in _coset_blocks(rs, p, k):
        sig = intlinalg.signature(rs.gram @ B)
        absdet = abs(intlinalg.det(B))
        parts.append(w.det * complex(Phase(Fraction(sig, 8))) * sum_phases(phases) / math.sqrt(absdet))
        count += len(phases)
    value = complex(_general_prefactor(rs, p)) * csum(parts) / len(rs.weyl_group)
    return PartitionResult(value, Formula.TRACE_COSETS, rs.name, f"T^{p}S", k, count)


def sqm_general_terms(rs: RootSystem, p: int, k: int) -> list[SqmTerm]:
    _check_p(p)
    terms = []
    for w, B, phases in _coset_blocks(rs, p, k):
        absdet = abs(intlinalg.det(B))
        terms.extend(SqmTerm(w.det, absdet, q) for q in phases)
    return terms


def z_sqm_general(rs: RootSystem, p: int, k: int) -> PartitionResult:
    """Fixed-point sum for ``U = T^p S`` and a classical group."""
    terms = sqm_general_terms(rs, p, k)
    value = _sum_terms(terms, len(rs.weyl_group))
    return PartitionResult(value, Formula.SQM_GENERAL, rs.name, f"T^{p}S", k, len(terms))
