"""Framing corrections relating the trace and fixed-point partition functions.

For SU(2) the two differ by ``zeta^{-psi(U)} sign(a + d)`` with
``psi(U) = Phi(U) - 3 sign(c (a + d))``. For a classical group and
``U = T^p S`` they differ by ``i^{|Delta_+|} exp(-p pi i |rho|^2 / h)
exp(i pi l sign(p) / 4)``, which agrees with the framing factor
``exp(-2 pi i psi dim G / 24)`` up to ``(sign p)^{|Delta_+|}``.
All comparisons are up to an overall sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConventionError, DomainError
from .gausssums import DEFAULT_TOL, Phase
from .modulargroup import Kind, SL2Element, classify, rademacher_phi, sign
from .partition import ZETA, rt_trace_su2, z_sqm_general, z_sqm_su2, z_trace_general_weights
from .rootsystems import RootSystem, pairing


@dataclass(frozen=True)
class PhaseComparison:
    lhs: complex
    rhs: complex
    ratio: Optional[complex]
    predicted: complex
    match_up_to_sign: bool
    abs_residual: float
    sign: int

    @property
    def degenerate(self) -> bool:
        """Both sides vanish, so no sign can be read off."""
        return self.ratio is None


def compare(lhs: complex, rhs: complex, predicted: complex, tol: float = DEFAULT_TOL) -> PhaseComparison:
    """Test ``lhs == +-predicted * rhs``.

    The residual is measured on values, ``min_s |lhs - s predicted rhs|``,
    relative to ``max(1, |lhs|)``. ``sign`` is the minimizing ``s`` or 0 when
    ``rhs`` vanishes.
    """
    lhs, rhs, predicted = complex(lhs), complex(rhs), complex(predicted)
    residuals = {s: abs(lhs - s * predicted * rhs) for s in (1, -1)}
    best = min(residuals, key=residuals.get)
    res = residuals[best]
    scale = max(1.0, abs(lhs))
    if abs(rhs) > tol:
        ratio = lhs / rhs
        found_sign = best
    else:
        ratio = None
        found_sign = 0
    return PhaseComparison(lhs, rhs, ratio, predicted, res < tol * scale, res, found_sign)


def psi(U: SL2Element, phi_sign: int = 1) -> int:
    """``Phi(U) - 3 sign(c (a + d))``; the sign term is 0 when ``c = 0``."""
    return rademacher_phi(U, phi_sign) - 3 * sign(U.c * U.trace)


def su2_predicted_phase(U: SL2Element, phi_sign: int = 1) -> complex:
    return complex(ZETA ** (-psi(U, phi_sign))) * sign(U.trace)


def su2_phase_check(U: SL2Element, k: int, tol: float = DEFAULT_TOL, phi_sign: int = 1) -> PhaseComparison:
    """Compare ``Tr R(U)`` against ``zeta^{-psi} sign(a+d) Z_SQM``."""
    if classify(U) is not Kind.HYPERBOLIC:
        raise DomainError(f"phase comparison needs hyperbolic U, got {U}")
    if U.c == 0:
        raise DomainError(f"phase comparison needs c != 0, got {U}")
    lhs = rt_trace_su2(U, k).value
    rhs = z_sqm_su2(U, k).value
    return compare(lhs, rhs, su2_predicted_phase(U, phi_sign), tol)


def _check_p(p: int) -> None:
    if abs(p) <= 2:
        raise DomainError(f"phase prediction needs |p| > 2, got p = {p}")


def general_calc_phase(rs: RootSystem, p: int) -> Phase:
    """``i^{|Delta_+|} exp(-p pi i <rho,rho>/h) exp(i pi l sign(p)/4)`` as an exact phase."""
    _check_p(p)
    rho2 = pairing(rs, rs.rho, rs.rho)
    return Phase(Fraction(rs.n_pos, 4) - Fraction(p) * rho2 / (2 * rs.h) + Fraction(rs.rank * sign(p), 8))


def framing_correction(rs: RootSystem, p: int) -> Phase:
    """``exp(-2 pi i psi dim G / 24)`` with ``psi = p - 3 sign p``."""
    _check_p(p)
    return Phase(-Fraction((p - 3 * sign(p)) * rs.dim, 24))


def general_phase_prediction(rs: RootSystem, p: int) -> complex:
    """Predicted ratio of ``Tr(T^p S)`` to the fixed-point sum.

    Also checks, exactly, that it equals the framing correction times
    ``(sign p)^{|Delta_+|}``.
    """
    calc = general_calc_phase(rs, p)
    expected = framing_correction(rs, p) * Phase(Fraction(rs.n_pos * (1 - sign(p)), 4))
    if calc != expected:
        raise ConventionError(
            f"{rs.name}, p={p}: calculated phase {calc} is not (sign p)^|Delta+| times framing {expected}"
        )
    return complex(calc)


def general_phase_check(rs: RootSystem, p: int, k: int, tol: float = DEFAULT_TOL) -> PhaseComparison:
    predicted = general_phase_prediction(rs, p)
    lhs = z_trace_general_weights(rs, p, k).value
    rhs = z_sqm_general(rs, p, k).value
    return compare(lhs, rhs, predicted, tol)


def framing_sign(comparison: PhaseComparison, rs: RootSystem, p: int) -> int:
    """Sign of the measured ratio against the framing correction alone, or 0 if degenerate."""
    if comparison.ratio is None:
        return 0
    frame = complex(framing_correction(rs, p))
    rel = comparison.ratio / frame
    if math.isclose(rel.real, 1, abs_tol=1e-6) and abs(rel.imag) < 1e-6:
        return 1
    if math.isclose(rel.real, -1, abs_tol=1e-6) and abs(rel.imag) < 1e-6:
        return -1
    return 0
