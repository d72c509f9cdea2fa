import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mappingtori import intlinalg
from mappingtori.errors import SingularLattice

B5 = intlinalg.int_matrix([[-4, 1], [-1, -1]])

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)
)


def _check_snf(M):
    snf = intlinalg.smith_normal_form(M)
    assert np.array_equal(snf.u @ M @ snf.v, snf.d)
    assert abs(intlinalg.det(snf.u)) == 1
    assert abs(intlinalg.det(snf.v)) == 1
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0
    return snf


def test_snf_examples():
    assert _check_snf(intlinalg.int_matrix([[2, 0], [0, 6]])).diagonal == [2, 6]
    assert _check_snf(B5).diagonal == [1, 5]
    snf = _check_snf(intlinalg.int_matrix([[0, 0], [0, 0]]))
    assert snf.diagonal == [0, 0]
    assert np.array_equal(snf.u, intlinalg.identity(2)) and np.array_equal(snf.v, intlinalg.identity(2))


@settings(max_examples=200)
@given(square)
def test_snf_against_sympy(rows):
    M = intlinalg.int_matrix(rows)
    snf = _check_snf(M)
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = sorted(abs(int(ref[i, i])) for i in range(len(rows)))
    assert sorted(snf.diagonal) == expected
    assert intlinalg.det(M) == sympy.Matrix(rows).det()


def test_coset_examples():
    assert [list(x) for x in intlinalg.coset_representatives(intlinalg.identity(2))] == [[0, 0]]
    reps = intlinalg.coset_representatives(intlinalg.int_matrix([[2, 0], [0, 3]]))
    assert sorted(tuple(x) for x in reps) == [(i, j) for i in range(2) for j in range(3)]
    reps = intlinalg.coset_representatives(B5)
    assert len(reps) == 5
    for i, x in enumerate(reps):
        for y in reps[i + 1 :]:
            assert not intlinalg.in_lattice(B5, x - y)


def test_singular_errors():
    Z = intlinalg.int_matrix([[1, 2], [2, 4]])
    for fn in (intlinalg.coset_representatives, intlinalg.inverse):
        with pytest.raises(SingularLattice):
            fn(Z)
    with pytest.raises(SingularLattice):
        intlinalg.solve_rational(Z, [1, 0])
    with pytest.raises(SingularLattice):
        intlinalg.in_lattice(Z, [1, 0])


def test_in_lattice_and_solve_examples():
    assert intlinalg.in_lattice(intlinalg.identity(2), [5, 7])
    assert intlinalg.in_lattice(B5, [5, 0])
    assert not intlinalg.in_lattice(B5, [1, 0])
    assert list(intlinalg.solve_rational(B5, [1, 0])) == [Fraction(-1, 5), Fraction(1, 5)]
    assert list(intlinalg.solve_rational(intlinalg.identity(2), [3, Fraction(1, 2)])) == [3, Fraction(1, 2)]
    assert list(intlinalg.solve_rational(intlinalg.int_matrix([[2, -1], [1, -1]]), [0, 0])) == [0, 0]


def test_coset_count_and_completeness():
    rng = random.Random(5)
    done = 0
    while done < 150:
        n = rng.randint(1, 3)
        B = intlinalg.int_matrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        D = abs(intlinalg.det(B))
        if D == 0 or D > 200:
            continue
        reps = intlinalg.coset_representatives(B)
        assert len(reps) == D
        assert len({tuple(x) for x in reps}) == D
        for _ in range(5):
            v = np.array([rng.randint(-100, 100) for _ in range(n)], dtype=object)
            assert sum(intlinalg.in_lattice(B, v - x) for x in reps) == 1
        done += 1


def test_representatives_are_deterministic():
    assert [tuple(x) for x in intlinalg.coset_representatives(B5)] == [
        tuple(x) for x in intlinalg.coset_representatives(B5.copy())
    ]


def test_inverse_and_integral_inverse():
    M = intlinalg.int_matrix([[2, 1], [1, 1]])
    assert np.array_equal(intlinalg.integral_inverse(M), intlinalg.int_matrix([[1, -1], [-1, 2]]))
    inv = intlinalg.inverse(intlinalg.int_matrix([[2, 0], [0, 4]]))
    assert inv[1, 1] == Fraction(1, 4)


@pytest.mark.parametrize(
    "rows, expected",
    [([[2, 0], [0, -3]], 0), ([[1, 0], [0, 1]], 2), ([[0, 1], [1, 0]], 0), ([[-2, 1], [1, -2]], -2), ([[0, 0], [0, 1]], 1)],
)
def test_signature(rows, expected):
    assert intlinalg.signature(intlinalg.rational_matrix(rows)) == expected


@given(square)
def test_signature_matches_eigenvalues(rows):
    M = np.array(rows, dtype=float)
    sym = M + M.T
    eig = np.linalg.eigvalsh(sym)
    if np.min(np.abs(eig)) < 1e-6:
        return
    expected = int(np.sum(eig > 0) - np.sum(eig < 0))
    assert intlinalg.signature(intlinalg.int_matrix((np.array(rows, dtype=object) + np.array(rows, dtype=object).T).tolist())) == expected


@settings(max_examples=200)
@given(square)
def test_hermite_form(rows):
    B = intlinalg.int_matrix(rows)
    if intlinalg.det(B) == 0:
        with pytest.raises(SingularLattice):
            intlinalg.hermite_normal_form(B)
        return
    H = intlinalg.hermite_normal_form(B)
    n = len(rows)
    V = np.concatenate([intlinalg.solve_rational(B, H[:, j]).reshape(-1, 1) for j in range(n)], axis=1)
    assert all(x.denominator == 1 for x in V.reshape(-1))
    assert abs(intlinalg.det(V)) == 1
    for i in range(n):
        assert H[i, i] > 0
        assert all(H[i, j] == 0 for j in range(i))
        assert all(0 <= H[i, j] < H[i, i] for j in range(i + 1, n))
