"""Cross-formula verification suites, runnable from the command line.

Each suite returns a ``SuiteResult`` with the number of cases checked, the
largest residual seen and a short list of failing cases.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import framing, intlinalg, partition
from .fixedpoints import block_action, cs_invariant, fixed_point_operator, theta_char
from .gausssums import DEFAULT_TOL, reciprocity_1d
from .modulargroup import SL2Element, rademacher_phi, sign, word_decompose, word_evaluate
from .rootsystems import build, is_weight

MAX_FAILURES = 10


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    max_residual: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def record(self, ok: bool, residual: float = 0.0, detail=None) -> None:
        self.cases += 1
        self.max_residual = max(self.max_residual, float(residual))
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(detail)


def hyperbolic_grid(bound: int = 10, max_c: int = 5) -> list[SL2Element]:
    """Hyperbolic ``U`` with entries in ``[-bound, bound]`` and ``1 <= |c| <= max_c``."""
    out = []
    rng = range(-bound, bound + 1)
    for a, c, d in itertools.product(rng, rng, rng):
        if c == 0 or abs(c) > max_c or abs(a + d) <= 2:
            continue
        num = a * d - 1
        if num % c:
            continue
        b = num // c
        if abs(b) <= bound:
            out.append(SL2Element(a, b, c, d))
    return out


GENERAL_GROUPS = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2))
GENERAL_PS = (3, -3, 4, 5)


def suite_reciprocity(max_n: int = 40, tol: float = 1e-10) -> SuiteResult:
    res = SuiteResult("reciprocity")
    for a in range(1, max_n + 1):
        for c in range(1, max_n + 1):
            if (a * c) % 2:
                continue
            lhs, rhs = reciprocity_1d(a, c)
            err = abs(lhs - rhs)
            res.record(err < tol, err, (a, c, err))
    return res


def suite_su2_modulus(bound: int = 10, levels: Iterable[int] = range(1, 9), tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("su2-modulus")
    for U in hyperbolic_grid(bound):
        for k in levels:
            err = abs(abs(partition.rt_trace_su2(U, k).value) - abs(partition.z_sqm_su2(U, k).value))
            res.record(err < tol, err, (str(U), k, err))
    return res


def suite_su2_phase(bound: int = 10, levels: Iterable[int] = range(1, 9), tol: float = DEFAULT_TOL) -> SuiteResult:
    """``Tr R(U) = +- zeta^{-psi} sign(a+d) Z_SQM`` with one sign per ``U``."""
    res = SuiteResult("su2-phase")
    levels = list(levels)
    for U in hyperbolic_grid(bound):
        signs = set()
        worst = 0.0
        ok = True
        for k in levels:
            cmp = framing.su2_phase_check(U, k, tol)
            worst = max(worst, cmp.abs_residual)
            ok &= cmp.match_up_to_sign
            if cmp.sign:
                signs.add(cmp.sign)
        ok &= len(signs) <= 1
        res.record(ok, worst, (str(U), sorted(signs), worst))
    return res


def suite_golden(tol: float = 1e-12) -> SuiteResult:
    res = SuiteResult("golden")
    U = SL2Element.TpS(3)
    for k, expected in ((3, (1 - 5**0.5) / 2), (1, 1.0)):
        err = abs(partition.z_sqm_su2(U, k).value - expected)
        res.record(err < tol, err, ("T^3S", k, err))
    for k in range(1, 21):
        err = abs(partition.z_sqm_su2(SL2Element.S(), k).value)
        res.record(err < tol, err, ("S", k, err))
    return res


def suite_general_triangle(
    groups=GENERAL_GROUPS, ps=GENERAL_PS, levels: Iterable[int] = range(1, 5), tol: float = DEFAULT_TOL
) -> SuiteResult:
    res = SuiteResult("general-triangle")
    levels = list(levels)
    for fam, rank in groups:
        rs = build(fam, rank)
        for p in ps:
            for k in levels:
                w_val = partition.z_trace_general_weights(rs, p, k).value
                c_val = partition.z_trace_general_cosets(rs, p, k).value
                s_val = partition.z_sqm_general(rs, p, k).value
                e1 = abs(w_val - c_val)
                e2 = abs(abs(s_val) - abs(w_val))
                cmp = framing.general_phase_check(rs, p, k, tol)
                fsign = framing.framing_sign(cmp, rs, p)
                sign_ok = cmp.degenerate or fsign == sign(p) ** rs.n_pos
                ok = e1 < tol and e2 < tol and cmp.match_up_to_sign and sign_ok
                res.record(ok, max(e1, e2, cmp.abs_residual), (rs.name, p, k, e1, e2, cmp.sign, fsign))
    return res


def suite_a1_reduction(ps=(3, -3, 4, -4, 5, 7), levels: Iterable[int] = range(1, 9)) -> SuiteResult:
    res = SuiteResult("a1-reduction")
    rs = build("A", 1)
    for p in ps:
        for k in levels:
            general = Counter(partition.sqm_general_terms(rs, p, k))
            su2 = Counter(partition.sqm_su2_terms(SL2Element.TpS(p), k))
            res.record(general == su2, 0.0 if general == su2 else 1.0, (p, k))
    return res


def suite_domain_counting(bound: int = 10, levels: Iterable[int] = range(1, 9)) -> SuiteResult:
    res = SuiteResult("domain-counting")
    levels = list(levels)
    for U in hyperbolic_grid(bound):
        for k in levels:
            for branch in (1, -1):
                D = abs(U.trace + 2 * branch)
                inner = Counter(partition.su2_trace_inner_phases(U, k, branch))
                ext = Counter(partition.su2_trace_inner_phases(U, k, branch, extended=True))
                ok = ext == Counter({q: D * n for q, n in inner.items()})
                res.record(ok, 0.0 if ok else 1.0, (str(U), k, branch))
    return res


def g_symmetry_draw(rng: random.Random):
    """A random ``(rs, p, r, lam)`` for the g-invariance checks."""
    fam, rank = rng.choice(GENERAL_GROUPS + (("B", 3), ("C", 3)))
    rs = build(fam, rank)
    p = rng.choice([-5, -4, -3, 3, 4, 5, 6])
    r = rng.randint(1, 6) + rs.h
    labels = [rng.randint(-6, 6) for _ in range(rs.rank)]
    lam = rs.weight_to_coroot @ np.array([Fraction(x) for x in labels], dtype=object)
    return rs, p, r, lam


def wall_weight(rs, r: int, lam, rng: random.Random):
    """Move ``lam`` onto an affine wall ``<x, alpha> = r n`` by an orthogonal projection.

    The projection along a long root changes ``lam`` by an integer multiple of
    the coroot, so the result is always a weight.
    """
    roots = list(rs.roots)
    rng.shuffle(roots)
    for root in roots:
        for n in rng.sample(range(-2, 3), 5):
            norm = root @ rs.gram @ root
            x = lam - ((lam @ rs.gram @ root) - r * n) / norm * root
            if is_weight(rs, x):
                return x
    raise AssertionError("no wall weight found")  # pragma: no cover - long roots always work


def suite_g_symmetries(draws: int = 500, seed: int = 20260, tol: float = 1e-10) -> SuiteResult:
    res = SuiteResult("g-symmetries")
    rng = random.Random(seed)
    for _ in range(draws):
        rs, p, r, lam = g_symmetry_draw(rng)
        g0 = partition.g_lambda(rs, p, r, lam)
        u = rng.choice(rs.weyl_group)
        root = rng.choice(rs.roots)
        coroot = 2 * root / (root @ rs.gram @ root)
        checks = [
            abs(partition.g_lambda(rs, p, r, -lam) - g0),
            abs(partition.g_lambda(rs, p, r, u.matrix @ lam) - g0),
            abs(partition.g_lambda(rs, p, r, lam + r * coroot) - g0),
        ]
        wall = wall_weight(rs, r, lam, rng)
        checks.append(abs(partition.g_lambda(rs, p, r, wall)))
        err = max(checks)
        res.record(err < tol, err, (rs.name, p, r, [str(x) for x in lam], err))
    return res


def suite_structural(samples: int = 1000, seed: int = 7, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("structural")
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, 4)
        M = intlinalg.int_matrix([[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)])
        snf = intlinalg.smith_normal_form(M)
        diag = snf.diagonal
        ok = (
            np.array_equal(snf.u @ M @ snf.v, snf.d)
            and abs(intlinalg.det(snf.u)) == 1
            and abs(intlinalg.det(snf.v)) == 1
            and all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0 for i in range(n - 1))
        )
        res.record(ok, 0.0, ("snf", M.tolist()))
    for _ in range(samples):
        U1, U2 = random_sl2(rng, 30), random_sl2(rng, 30)
        U12 = U1 @ U2
        if 0 in (U1.c, U2.c, U12.c):
            continue
        lhs = rademacher_phi(U12)
        rhs = rademacher_phi(U1) + rademacher_phi(U2) - 3 * sign(U1.c * U2.c * U12.c)
        res.record(lhs == rhs, abs(lhs - rhs), ("phi-cocycle", str(U1), str(U2)))
    for k in range(1, 9):
        S, T = partition.rt_modular_data_su2(k)
        I = np.eye(S.shape[0])
        S2 = S @ S
        e1 = np.abs(np.linalg.matrix_power(S @ T, 3) - S2).max()
        e2 = np.abs(S2 @ S2 - I).max()
        res.record(max(e1, e2) < tol, max(e1, e2), ("rt-relations", k))
    return res


def random_sl2(rng: random.Random, bound: int) -> SL2Element:
    """A random element with ``|a|, |c| <= bound``, found by solving for ``b, d``."""
    while True:
        a = rng.randint(-bound, bound)
        c = rng.randint(-bound, bound)
        g, x, y = _xgcd(a, c)
        if g != 1:
            continue
        # a*d - b*c = 1 with d = x + t c, b = -y + t a
        t = rng.randint(-3, 3)
        return SL2Element(a, -y + t * a, c, x + t * c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def suite_cs_theta(draws: int = 500, seed: int = 11) -> SuiteResult:
    """Representative independence of CS and SL(2,Z) / Weyl equivariance of theta."""
    res = SuiteResult("cs-theta")
    rng = random.Random(seed)
    groups = [build(f, l) for f, l in GENERAL_GROUPS]
    while res.cases < 2 * draws:
        rs = rng.choice(groups)
        U = random_sl2(rng, 6)
        w = rng.choice(rs.weyl_group)
        B = fixed_point_operator(U, w)
        n = 2 * rs.rank
        lam = np.array([rng.randint(-6, 6) for _ in range(n)], dtype=object)
        if intlinalg.det(B) != 0:
            m = np.array([rng.randint(-4, 4) for _ in range(n)], dtype=object)
            same = cs_invariant(rs, U, w, lam) == cs_invariant(rs, U, w, lam + B @ m)
            res.record(same, 0.0, ("cs", rs.name, str(U), lam.tolist()))
        V = random_sl2(rng, 6)
        moved = [block_action(V, intlinalg.identity(rs.rank)) @ lam, block_action(SL2Element.identity(), w.matrix) @ lam]
        ok = all(theta_char(rs, x) == theta_char(rs, lam) for x in moved)
        res.record(ok, 0.0, ("theta", rs.name, str(V), lam.tolist()))
    return res


def suite_words(samples: int = 1000, seed: int = 3) -> SuiteResult:
    res = SuiteResult("words")
    rng = random.Random(seed)
    for _ in range(samples):
        U = random_sl2(rng, 10**6)
        ok = all(word_evaluate(word_decompose(U, how)) == U for how in ("floor", "nearest"))
        res.record(ok, 0.0, str(U))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "reciprocity": suite_reciprocity,
    "golden": suite_golden,
    "su2-modulus": suite_su2_modulus,
    "su2-phase": suite_su2_phase,
    "general-triangle": suite_general_triangle,
    "a1-reduction": suite_a1_reduction,
    "g-symmetries": suite_g_symmetries,
    "domain-counting": suite_domain_counting,
    "structural": suite_structural,
    "cs-theta": suite_cs_theta,
    "words": suite_words,
}
