"""Exact integer and rational linear algebra on small square matrices.

Matrices are numpy arrays with ``dtype=object`` holding Python ints or
``Fraction``s, so every operation is exact and never overflows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, SingularLattice


def int_matrix(rows) -> np.ndarray:
    """Coerce ``rows`` to an exact integer matrix (object dtype)."""
    M = np.array(rows, dtype=object)
    if M.ndim != 2:
        raise DomainError(f"expected a 2-d matrix, got shape {M.shape}")
    out = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise DomainError(f"non-integer entry {x}")
            x = x.numerator
        if isinstance(x, (np.integer,)):
            x = int(x)
        if not isinstance(x, int) or isinstance(x, bool):
            raise DomainError(f"non-integer entry {x!r}")
        out[idx] = x
    return out


def rational_matrix(rows) -> np.ndarray:
    M = np.array(rows, dtype=object)
    return np.vectorize(Fraction, otypes=[object])(M) if M.size else M


def identity(n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=object)
    for i in range(n):
        M[i, i] = 1
    return M


def as_key(M: np.ndarray) -> tuple:
    return tuple(M.flatten().tolist())


def det(M: np.ndarray):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, m = M.shape
    if n != m:
        raise DomainError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M.tolist()]
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                # exact division; Fraction entries also divide exactly
                A[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = A[k][k]
    return sgn * A[n - 1][n - 1]


@dataclass(frozen=True, eq=False)
class SNFDecomposition:
    """``u @ M @ v == d`` with ``u``, ``v`` unimodular and ``d`` diagonal."""

    u: np.ndarray
    d: np.ndarray
    v: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.shape))]


def smith_normal_form(M) -> SNFDecomposition:
    """Smith normal form of a square integer matrix, with transforms.

    The invariant factors are non-negative and each divides the next.
    """
    A = int_matrix(M).copy()
    n, m = A.shape
    if n != m:
        raise DomainError("smith_normal_form requires a square matrix")
    U = identity(n)
    V = identity(m)

    def swap_rows(i, j):
        A[[i, j]] = A[[j, i]]
        U[[i, j]] = U[[j, i]]

    def swap_cols(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        V[:, [i, j]] = V[:, [j, i]]

    for t in range(n):
        while True:
            block = [(abs(A[i, j]), i, j) for i in range(t, n) for j in range(t, m) if A[i, j] != 0]
            if not block:
                break
            _, pi, pj = min(block)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, n):
                q = A[i, t] // A[t, t]
                if q:
                    A[i] = A[i] - q * A[t]
                    U[i] = U[i] - q * U[t]
                if A[i, t] != 0:
                    clean = False
            for j in range(t + 1, m):
                q = A[t, j] // A[t, t]
                if q:
                    A[:, j] = A[:, j] - q * A[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                if A[t, j] != 0:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if A[i, j] % A[t, t] != 0),
                None,
            )
            if bad is None:
                break
            A[t] = A[t] + A[bad]
            U[t] = U[t] + U[bad]
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
    return SNFDecomposition(U, A, V)


def inverse(M) -> np.ndarray:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    A = rational_matrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DomainError("inverse of a non-square matrix")
    aug = np.concatenate([A, rational_matrix(identity(n))], axis=1)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if piv is None:
            raise SingularLattice(f"matrix is singular:\n{M}")
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:]


def integral_inverse(M) -> np.ndarray:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    return int_matrix(inverse(M))


def solve_rational(B, v) -> np.ndarray:
    """The unique rational ``x`` with ``B @ x == v``."""
    B = rational_matrix(B)
    if det(B) == 0:
        raise SingularLattice(f"cannot solve with singular matrix:\n{B}")
    x = inverse(B) @ rational_matrix(np.array(v, dtype=object).reshape(-1, 1))
    return x.reshape(-1)


def in_lattice(B, v) -> bool:
    """True iff ``v`` lies in the lattice ``B Z^n``."""
    return all(x.denominator == 1 for x in solve_rational(B, v))


def hermite_normal_form(B) -> np.ndarray:
    """Upper-triangular column Hermite form ``H = B V`` with ``V`` unimodular.

    Diagonal entries are positive and each row is reduced, ``0 <= H[i, j] < H[i, i]``
    for ``j > i``. Requires ``det B != 0``.
    """
    H = int_matrix(B).copy()
    n = H.shape[0]
    if H.shape != (n, n):
        raise DomainError("hermite_normal_form requires a square matrix")
    for i in reversed(range(n)):
        # gcd of row i over columns ..i into column i
        while True:
            nz = [j for j in range(i + 1) if H[i, j] != 0]
            if not nz:
                raise SingularLattice(f"det is zero, quotient is infinite:\n{B}")
            piv = min(nz, key=lambda j: abs(H[i, j]))
            H[:, [i, piv]] = H[:, [piv, i]]
            for j in range(i):
                q = H[i, j] // H[i, i]
                if q:
                    H[:, j] = H[:, j] - q * H[:, i]
            if all(H[i, j] == 0 for j in range(i)):
                break
        if H[i, i] < 0:
            H[:, i] = -H[:, i]
        for j in range(i + 1, n):
            q = H[i, j] // H[i, i]
            if q:
                H[:, j] = H[:, j] - q * H[:, i]
    return H


def coset_representatives(B) -> list[np.ndarray]:
    """One integer vector from each class of ``Z^n / B Z^n``.

    The classes are the points of the box ``prod [0, H_ii)`` for the Hermite
    form ``H`` of ``B``; they come out in lexicographic order. For a diagonal
    ``B`` this is the obvious box.
    """
    H = hermite_normal_form(B)
    return [np.array(x, dtype=object) for x in itertools.product(*(range(H[i, i]) for i in range(H.shape[0])))]


def signature(M) -> int:
    """Signature (positive minus negative eigenvalue count) of a symmetric rational matrix.

    Uses symmetric Gaussian elimination, which preserves inertia.
    """
    A = rational_matrix(M).copy()
    n = A.shape[0]
    if A.shape != (n, n) or any(A[i, j] != A[j, i] for i in range(n) for j in range(n)):
        raise DomainError("signature needs a square symmetric matrix")
    sig = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if A[i, i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i, j] != 0), None)
            if off is None:
                break
            i, j = off
            # e_i -> e_i + e_j makes the (i, i) entry 2 A[i, j] != 0
            A[i] = A[i] + A[j]
            A[:, i] = A[:, i] + A[:, j]
            piv = i
        A[[k, piv]] = A[[piv, k]]
        A[:, [k, piv]] = A[:, [piv, k]]
        p = A[k, k]
        sig += 1 if p > 0 else -1
        for i in range(k + 1, n):
            if A[i, k] != 0:
                f = A[i, k] / p
                A[i] = A[i] - f * A[k]
                A[:, i] = A[:, i] - f * A[:, k]
        k += 1
    return sig
