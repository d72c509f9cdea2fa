"""Acceptance criteria 1-9, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines,
or ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from mappingtori import framing, intlinalg, partition
from mappingtori.fixedpoints import block_action, cs_invariant, fixed_point_operator, theta_char
from mappingtori.gausssums import reciprocity_1d
from mappingtori.modulargroup import SL2Element, rademacher_phi, sign
from mappingtori.rootsystems import build, is_weight, weight_from_dynkin

sys.path.insert(0, str(Path(__file__).parent))
from strategies import random_sl2  # noqa: E402

TOL = 1e-9
LEVELS = range(1, 9)


def hyperbolic_grid():
    """Hyperbolic ``U`` with all entries in [-10, 10] and ``1 <= |c| <= 5``, built by brute force."""
    rng = range(-10, 11)
    return [
        SL2Element(a, b, c, d)
        for a in rng
        for b in rng
        for c in rng
        for d in rng
        if 1 <= abs(c) <= 5 and a * d - b * c == 1 and abs(a + d) > 2
    ]


GRID = hyperbolic_grid()


def report(criterion, ok, detail, capsys=None):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def crit1():
    worst = 0.0
    for U in GRID:
        for k in LEVELS:
            worst = max(worst, abs(abs(partition.rt_trace_su2(U, k).value) - abs(partition.z_sqm_su2(U, k).value)))
    return worst < TOL, f"{len(GRID)} matrices x 8 levels, max | |Tr R| - |Z_SQM| | = {worst:.2e}"


def crit2():
    worst = 0.0
    bad = []
    degenerate = 0
    for U in GRID:
        signs = set()
        for k in LEVELS:
            cmp = framing.su2_phase_check(U, k, TOL)
            worst = max(worst, cmp.abs_residual)
            if not cmp.match_up_to_sign:
                bad.append((str(U), k))
            if cmp.degenerate:
                degenerate += 1
            else:
                signs.add(cmp.sign)
        if len(signs) > 1:
            bad.append((str(U), sorted(signs)))
    ok = not bad and worst < TOL
    return ok, f"max residual {worst:.2e}, one sign per U, {degenerate} vanishing (U,k) pairs, failures {bad[:3]}"


def crit3():
    golden = (1 - math.sqrt(5)) / 2
    T3S = SL2Element.TpS(3)
    errs = [
        abs(partition.z_sqm_su2(T3S, 3).value - golden),
        abs(partition.z_sqm_su2(T3S, 1).value - 1),
        max(abs(partition.z_sqm_su2(SL2Element.S(), k).value) for k in range(1, 21)),
    ]
    return max(errs) < 1e-12, f"errors (T^3S k=3, T^3S k=1, max over S k<=20) = {[f'{e:.1e}' for e in errs]}"


def crit4():
    worst = {"weights-cosets": 0.0, "modulus": 0.0, "phase": 0.0}
    bad = []
    signs_tested = 0
    for fam, rank in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2)]:
        rs = build(fam, rank)
        for p in (3, -3, 4, 5):
            for k in range(1, 5):
                w = partition.z_trace_general_weights(rs, p, k).value
                c = partition.z_trace_general_cosets(rs, p, k).value
                s = partition.z_sqm_general(rs, p, k).value
                worst["weights-cosets"] = max(worst["weights-cosets"], abs(w - c))
                worst["modulus"] = max(worst["modulus"], abs(abs(s) - abs(w)))
                cmp = framing.general_phase_check(rs, p, k, TOL)
                worst["phase"] = max(worst["phase"], cmp.abs_residual)
                ok = abs(w - c) < TOL and abs(abs(s) - abs(w)) < TOL and cmp.match_up_to_sign
                if not cmp.degenerate:
                    signs_tested += 1
                    ok &= framing.framing_sign(cmp, rs, p) == sign(p) ** rs.n_pos
                if not ok:
                    bad.append((rs.name, p, k))
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return not bad, f"max residuals: {detail}; framing sign checked on {signs_tested} cases; failures {bad[:3]}"


def crit5():
    rs = build("A", 1)
    bad = []
    for p in (3, -3, 4, -4, 5, 7):
        for k in LEVELS:
            if Counter(partition.sqm_general_terms(rs, p, k)) != Counter(partition.sqm_su2_terms(SL2Element.TpS(p), k)):
                bad.append((p, k))
    return not bad, f"48 (p, k) pairs compared as exact term multisets, mismatches {bad}"


def _wall_weight(rs, r, lam, rng):
    roots = list(rs.roots)
    rng.shuffle(roots)
    for root in roots:
        norm = root @ rs.gram @ root
        for n in rng.sample(range(-2, 3), 5):
            x = lam - ((lam @ rs.gram @ root) - r * n) / norm * root
            if is_weight(rs, x):
                return x, root, n
    raise AssertionError("no wall weight")


def crit6():
    rng = random.Random(51)
    groups = [build(f, l) for f, l in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("C", 3)]]
    worst = 0.0
    nonzero = 0
    for _ in range(500):
        rs = rng.choice(groups)
        p = rng.choice([-5, -4, -3, 3, 4, 5, 6])
        r = rs.h + rng.randint(1, 6)
        lam = weight_from_dynkin(rs, [rng.randint(-6, 6) for _ in range(rs.rank)])
        g0 = partition.g_lambda(rs, p, r, lam)
        nonzero += abs(g0) > 1e-6
        u = rng.choice(rs.weyl_group)
        root = rng.choice(rs.roots)
        coroot = 2 * root / (root @ rs.gram @ root)
        wall, wall_root, n = _wall_weight(rs, r, lam, rng)
        assert wall @ rs.gram @ wall_root == r * n
        errs = [
            abs(partition.g_lambda(rs, p, r, -lam) - g0),
            abs(partition.g_lambda(rs, p, r, u.matrix @ lam) - g0),
            abs(partition.g_lambda(rs, p, r, lam + r * coroot) - g0),
            abs(partition.g_lambda(rs, p, r, wall)),
        ]
        worst = max(worst, *errs)
    return worst < 1e-10, f"500 draws ({nonzero} with g != 0), max residual over (i)-(iv) {worst:.1e}"


def crit7():
    worst = 0.0
    count = 0
    for a in range(1, 41):
        for c in range(1, 41):
            if (a * c) % 2:
                continue
            lhs, rhs = reciprocity_1d(a, c)
            worst = max(worst, abs(lhs - rhs))
            count += 1
    return worst < 1e-10, f"{count} pairs, max |lhs - rhs| = {worst:.1e}"


def crit8():
    bad = []
    for U in GRID:
        for k in LEVELS:
            for branch in (1, -1):
                D = abs(U.trace + 2 * branch)
                inner = Counter(partition.su2_trace_inner_phases(U, k, branch))
                ext = Counter(partition.su2_trace_inner_phases(U, k, branch, extended=True))
                if ext != Counter({q: D * m for q, m in inner.items()}):
                    bad.append((str(U), k, branch))
    return not bad, f"{len(GRID) * 16} exact multiset comparisons, mismatches {bad[:3]}"


def crit9():
    rng = random.Random(90)
    notes = []
    ok = True
    # SNF round trip and coset count
    snf_ok = 0
    for _ in range(1000):
        n = rng.randint(1, 4)
        M = intlinalg.int_matrix([[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)])
        snf = intlinalg.smith_normal_form(M)
        diag = snf.diagonal
        good = (
            np.array_equal(snf.u @ M @ snf.v, snf.d)
            and abs(intlinalg.det(snf.u)) == abs(intlinalg.det(snf.v)) == 1
            and all((b % a == 0) if a else b == 0 for a, b in zip(diag, diag[1:]))
        )
        D = abs(intlinalg.det(M))
        if good and 0 < D <= 2000:
            good = len(intlinalg.coset_representatives(M)) == D
        snf_ok += good
    ok &= snf_ok == 1000
    notes.append(f"SNF/cosets {snf_ok}/1000")
    # Phi cocycle
    cocycle = 0
    while cocycle < 1000:
        U1, U2 = random_sl2(rng, 30), random_sl2(rng, 30)
        U12 = U1 @ U2
        if U12.c == 0:
            continue
        ok &= rademacher_phi(U12) == rademacher_phi(U1) + rademacher_phi(U2) - 3 * sign(U1.c * U2.c * U12.c)
        cocycle += 1
    notes.append(f"cocycle {cocycle} triples")
    # RT relations
    rt_err = 0.0
    for k in LEVELS:
        S, T = partition.rt_modular_data_su2(k)
        S2 = S @ S
        rt_err = max(rt_err, np.abs(np.linalg.matrix_power(S @ T, 3) - S2).max(), np.abs(S2 @ S2 - np.eye(k + 1)).max())
    ok &= rt_err < TOL
    notes.append(f"RT relations {rt_err:.1e}")
    # CS representative independence and theta equivariance
    groups = [build(f, l) for f, l in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2)]]
    draws = 0
    while draws < 500:
        rs = rng.choice(groups)
        U = random_sl2(rng, 6)
        w = rng.choice(rs.weyl_group)
        B = fixed_point_operator(U, w)
        if intlinalg.det(B) == 0:
            continue
        n = 2 * rs.rank
        lam = np.array([rng.randint(-6, 6) for _ in range(n)], dtype=object)
        m = np.array([rng.randint(-4, 4) for _ in range(n)], dtype=object)
        ok &= cs_invariant(rs, U, w, lam) == cs_invariant(rs, U, w, lam + B @ m)
        V = random_sl2(rng, 6)
        for moved in (block_action(V, intlinalg.identity(rs.rank)) @ lam, block_action(SL2Element.identity(), w.matrix) @ lam):
            ok &= theta_char(rs, moved) == theta_char(rs, lam)
        draws += 1
    notes.append(f"CS/theta {draws} draws")
    return ok, ", ".join(notes)


CRITERIA = {1: crit1, 2: crit2, 3: crit3, 4: crit4, 5: crit5, 6: crit6, 7: crit7, 8: crit8, 9: crit9}


def test_grid_shape():
    assert all(abs(x) <= 10 for U in GRID for x in (U.a, U.b, U.c, U.d))
    assert len(GRID) == 512


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, capsys):
    ok, detail = CRITERIA[criterion]()
    report(criterion, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    results = [report(c, *CRITERIA[c]()) for c in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
