"""Commutants, Sylvester equations and characteristic polynomials.

Matrices are vectorized row-major, so ``vec(A @ X) = kron(A, 1) vec(X)`` and
``vec(X @ B) = kron(1, B.T) vec(X)``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import NoSolution, ShapeMismatch
from . import poly
from .elimination import determinant, nullspace, rank, solve_linear
from .matrices import DEFAULT_TOL, field_of, identity, kron, require_square, to_complex, zeros
from .scalars import FieldKind
from .subspace import Subspace


def unvec(v, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v).reshape(rows, cols)


def commutator_operator(a) -> np.ndarray:
    """Matrix of ``X -> aX - Xa`` on row-major vectorized n x n matrices."""
    n = require_square(a)
    one = identity(n, field_of(a))
    return kron(a, one) - kron(one, np.asarray(a).T)


def commutant(a, tol: float = DEFAULT_TOL) -> Subspace:
    """Basis (as vectorized matrices) of ``{X : aX = Xa}``."""
    op = commutator_operator(a)
    return Subspace(op.shape[1], nullspace(op, tol))


def commutant_matrices(a, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    n = require_square(a)
    basis = commutant(a, tol).basis
    return [unvec(basis[:, j], n, n) for j in range(basis.shape[1])]


def is_nonderogatory(a, tol: float = DEFAULT_TOL) -> bool:
    """Minimal polynomial equals characteristic polynomial, i.e. the commutant has dimension n."""
    n = require_square(a)
    if n == 0:
        return True
    return n * n - rank(commutator_operator(a), tol) == n


def sylvester_operator(S, sigma) -> np.ndarray:
    """Matrix of ``v -> v S - sigma v`` for v of shape (rows(sigma), rows(S))."""
    k = require_square(S, "S")
    m = require_square(sigma, "sigma")
    kind = field_of(S, sigma)
    return kron(identity(m, kind), np.asarray(S).T) - kron(np.asarray(sigma), identity(k, kind))


def sylvester_solve(S, sigma, C, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Solve ``v S - sigma v = C``; unique when the spectra of S and sigma are disjoint."""
    k = require_square(S, "S")
    m = require_square(sigma, "sigma")
    C = np.asarray(C)
    if C.shape != (m, k):
        raise ShapeMismatch(f"C must have shape {(m, k)}, got {C.shape}")
    if m == 0 or k == 0:
        return zeros(m, k, field_of(S, sigma, C))
    x = solve_linear(sylvester_operator(S, sigma), C.reshape(-1, 1), tol)
    return unvec(x, m, k)


def charpoly(a) -> list:
    """Coefficients of det(t - a), lowest degree first (exact: Faddeev-LeVerrier)."""
    n = require_square(a)
    kind = field_of(a)
    if kind is FieldKind.COMPLEX:
        if n == 0:
            return [1.0 + 0j]
        return list(np.poly(to_complex(a))[::-1].astype(complex))
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    one = identity(n, kind)
    M = zeros(n, n, kind)
    for k in range(1, n + 1):
        M = a @ M + coeffs[n - k + 1] * one
        AM = a @ M
        coeffs[n - k] = -sum(AM[i, i] for i in range(n)) / k
    return coeffs


def resultant(p: list, q: list):
    """Resultant of two exact polynomials via the Sylvester matrix determinant."""
    p, q = poly.trim(p), poly.trim(q)
    if not p or not q:
        return Fraction(0)
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    if size == 0:
        return Fraction(1)
    kind = field_of(np.array(p + q, dtype=object))
    M = zeros(size, size, kind)
    hp, hq = p[::-1], q[::-1]
    for i in range(dq):
        M[i, i:i + dp + 1] = hp
    for i in range(dp):
        M[dq + i, i:i + dq + 1] = hq
    return determinant(M)


def spectra_disjoint(S, sigma, tol: float = DEFAULT_TOL) -> bool:
    """No common eigenvalue; exact via the resultant of characteristic polynomials."""
    if field_of(S, sigma) is FieldKind.COMPLEX:
        ev1 = np.linalg.eigvals(to_complex(S)) if np.asarray(S).size else np.zeros(0)
        ev2 = np.linalg.eigvals(to_complex(sigma)) if np.asarray(sigma).size else np.zeros(0)
        scale = max([1.0] + [abs(x) for x in ev1] + [abs(x) for x in ev2])
        return all(abs(x - y) > np.sqrt(tol) * scale for x in ev1 for y in ev2)
    return resultant(charpoly(S), charpoly(sigma)) != 0


def polynomial_in(a, coeffs: list) -> np.ndarray:
    """Evaluate the polynomial with coefficients ``coeffs`` (lowest first) at the matrix ``a``."""
    n = require_square(a)
    kind = field_of(a)
    out = zeros(n, n, kind)
    for c in reversed(coeffs):
        out = out @ a + c * identity(n, kind)
    return out


def minimal_polynomial_degree(a, tol: float = DEFAULT_TOL) -> int:
    """Dimension of the span of 1, a, a^2, ..."""
    n = require_square(a)
    kind = field_of(a)
    powers = []
    p = identity(n, kind)
    for _ in range(n + 1):
        powers.append(p.reshape(-1, 1))
        p = p @ a
    stacked = np.concatenate(powers, axis=1)
    return rank(stacked, tol) if n else 0


__all__ = [
    "commutant", "commutant_matrices", "commutator_operator", "is_nonderogatory",
    "sylvester_operator", "sylvester_solve", "charpoly", "resultant", "spectra_disjoint",
    "polynomial_in", "minimal_polynomial_degree", "unvec", "NoSolution",
]
