"""Linear-algebra building blocks for the deformation constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import NoSolution, NotCommuting, NotNonderogatory, SearchExhausted, ShapeMismatch, Unreachable
from ..linalg import (DEFAULT_TOL, FieldKind, PolyMat, Subspace, commutator, determinant, equal, field_of,
                      identity, is_nonderogatory, is_zero, max_abs, nullspace, solve_linear,
                      symmetric_congruence, symmetric_factor, to_complex, zeros)
from ..linalg.matrices import require_square

SEARCH_BUDGET = 64


def _symmetric_basis(n: int, kind: FieldKind) -> list[np.ndarray]:
    out = []
    for i in range(n):
        for j in range(i, n):
            H = zeros(n, n, kind)
            H[i, j] = H[i, j] + 1
            if i != j:
                H[j, i] = H[j, i] + 1
            out.append(H)
    return out


def _combine(basis: list[np.ndarray], coeffs) -> np.ndarray:
    out = zeros(*basis[0].shape, field_of(basis[0]))
    for c, H in zip(coeffs, basis):
        out = out + c * H
    return out


def solve_bracket_symmetric(A, C, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A symmetric X with [A, X] = C (A symmetric nonderogatory, C antisymmetric)."""
    n = require_square(A, "A")
    C = np.asarray(C)
    if C.shape != (n, n):
        raise ShapeMismatch(f"C must be {n} x {n}")
    if n == 0:
        return zeros(0, 0, field_of(A, C))
    kind = field_of(A, C)
    basis = _symmetric_basis(n, kind)
    op = np.stack([commutator(A, H).reshape(-1) for H in basis], axis=1)
    coeffs = solve_linear(op, C.reshape(-1, 1), tol)
    return _combine(basis, coeffs.reshape(-1))


def symmetric_intertwiners(a, tol: float = DEFAULT_TOL, others=()) -> list[np.ndarray]:
    """Basis of {E symmetric : E m = m^T E} for m = a and every matrix in ``others``."""
    n = require_square(a)
    mats = [a, *others]
    kind = field_of(*mats)
    basis = _symmetric_basis(n, kind)
    if not basis:
        return []
    op = np.stack([np.concatenate([(H @ m - m.T @ H).reshape(-1) for m in mats]) for H in basis], axis=1)
    ker = nullspace(op, tol)
    return [_combine(basis, ker[:, j]) for j in range(ker.shape[1])]


def _coefficient_sequence(count: int, attempt: int, rng: np.random.Generator | None):
    if attempt == 0:
        return [Fraction(j + 1) for j in range(count)]
    if rng is None:
        rng = np.random.default_rng(attempt)
    return [Fraction(int(x)) for x in rng.integers(-5, 6, size=count)]


def invertible_symmetric_intertwiner(a, seed: int = 0, tol: float = DEFAULT_TOL, others=()) -> np.ndarray:
    """A nonsingular symmetric E with E m = m^T E for m = a and ``others``.

    For a single matrix one always exists; for several it may not.
    """
    n = require_square(a)
    kind = field_of(a, *others)
    basis = symmetric_intertwiners(a, tol, others)
    if n == 0:
        return zeros(0, 0, kind)
    if not basis:
        raise SearchExhausted("only E = 0 intertwines the given matrices")
    rng = np.random.default_rng(seed)
    for attempt in range(SEARCH_BUDGET):
        coeffs = _coefficient_sequence(len(basis), attempt, rng)
        E = _combine(basis, coeffs) if kind.exact else _combine(basis, [complex(c) for c in coeffs])
        if kind.exact:
            if determinant(E) != 0:
                return E
        elif abs(np.linalg.det(E)) > tol * max(1.0, max_abs(E)) ** n:
            return E
    raise SearchExhausted("no invertible symmetric intertwiner found")


@dataclass(frozen=True, eq=False)
class Symmetrization:
    s: np.ndarray
    A: np.ndarray
    B: np.ndarray
    exact: bool

    def __iter__(self):
        return iter((self.s, self.A, self.B))


def symmetrize_pair(A, B, tol: float = DEFAULT_TOL) -> Symmetrization:
    """s with s^T A s^-T and s^T B s^-T symmetric, for commuting A, B with A nonderogatory.

    Exact when the symmetrizer's congruence diagonalization needs no square
    roots outside the field; otherwise the gauge is computed in floats.
    """
    scale = max(1.0, max_abs(A), max_abs(B)) ** 2
    if not is_zero(commutator(A, B), tol, scale):
        raise NotCommuting("A and B do not commute")
    if not is_nonderogatory(A, tol):
        raise NotNonderogatory("A is derogatory")
    n = require_square(A)
    kind = field_of(A, B)
    if is_zero(A - A.T, tol) and is_zero(B - B.T, tol):
        one = identity(n, kind)
        return Symmetrization(one, A, B, kind.exact)
    E = invertible_symmetric_intertwiner(A, tol=tol)
    exact = False
    if kind.exact:
        cong = symmetric_congruence(E)
        if not cong.weighted:
            s = cong.g.T
            exact = True
    if not exact:
        s = symmetric_factor(to_complex(E), tol)
    from ..linalg import inverse

    s_inv_t = inverse(s).T
    A2 = s.T @ (A if exact else to_complex(A)) @ s_inv_t
    B2 = s.T @ (B if exact else to_complex(B)) @ s_inv_t
    return Symmetrization(s, A2, B2, exact)


def find_nonderogatory_commuting(B, seed: int = 0, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A nonderogatory N with [N, B] = 0, by sampling the commutant of B."""
    from ..linalg import commutant_matrices

    n = require_square(B)
    if is_nonderogatory(B, tol):
        return np.array(B, copy=True)
    basis = commutant_matrices(B, tol)
    rng = np.random.default_rng(seed)
    for _ in range(SEARCH_BUDGET):
        coeffs = [Fraction(int(x)) for x in rng.integers(-4, 5, size=len(basis))]
        N = _combine(basis, coeffs if field_of(B).exact else [complex(c) for c in coeffs])
        if is_zero(commutator(N, B), tol) and is_nonderogatory(N, tol):
            return N
    raise SearchExhausted(f"no nonderogatory commuting matrix found in {SEARCH_BUDGET} samples (n={n})")


@dataclass(frozen=True, eq=False)
class ReachabilityWitness:
    """Vectors l_i in L with v = sum_i T^i l_i."""

    l_parts: list
    T: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        out = zeros(self.T.shape[0], 1, field_of(self.T, self.v))
        power = identity(self.T.shape[0], field_of(self.T))
        for l in self.l_parts:
            out = out + power @ l
            power = self.T @ power
        return out

    def verify(self, tol: float = DEFAULT_TOL) -> bool:
        return equal(self.reconstruct(), self.v, tol)


def reachability_decompose(T, L: Subspace, v, tol: float = DEFAULT_TOL) -> ReachabilityWitness:
    """Write v = sum_{i<n} T^i l_i with l_i in L, or raise Unreachable."""
    n = require_square(T, "T")
    v = np.asarray(v).reshape(-1, 1)
    if L.ambient_dim != n or v.shape[0] != n:
        raise ShapeMismatch("T, L and v must live in the same space")
    kind = field_of(T, v, L.basis)
    d = L.dim
    if d == 0:
        if is_zero(v, tol):
            return ReachabilityWitness([zeros(n, 1, kind) for _ in range(n)], T, v)
        raise Unreachable("v is nonzero and L is zero")
    blocks = []
    power = identity(n, kind)
    for _ in range(n):
        blocks.append(power @ L.basis)
        power = T @ power
    try:
        coeffs = solve_linear(np.concatenate(blocks, axis=1), v, tol)
    except NoSolution:
        raise Unreachable("v is not in L + TL + ... + T^(n-1) L") from None
    parts = [L.basis @ coeffs[i * d:(i + 1) * d] for i in range(n)]
    return ReachabilityWitness(parts, T, v)


def curve_from_reachability(T, L: Subspace, v, tol: float = DEFAULT_TOL) -> tuple[PolyMat, PolyMat]:
    """r(t), l(t) with r(0) = l(0) = 0, l(t) in L and (T - t) r(t) = t v + l(t).

    With v = sum T^i l_i: r(t) = sum_i t^(i+1) sum_{j>i} T^(j-i-1) l_j and
    l(t) = -sum_i t^(i+1) l_i.
    """
    witness = reachability_decompose(T, L, v, tol)
    n = T.shape[0]
    kind = field_of(T, witness.v)
    parts = witness.l_parts
    r_coeffs = [zeros(n, 1, kind)]
    l_coeffs = [zeros(n, 1, kind)]
    for i in range(n):
        w = zeros(n, 1, kind)
        power = identity(n, kind)
        for j in range(i + 1, n):
            w = w + power @ parts[j]
            power = T @ power
        r_coeffs.append(w)
        l_coeffs.append(-parts[i])
    return PolyMat(r_coeffs, (n, 1), kind), PolyMat(l_coeffs, (n, 1), kind)


def reachability_residual(T, v, r_t: PolyMat, l_t: PolyMat) -> PolyMat:
    """(T - t) r(t) - t v - l(t)."""
    n = T.shape[0]
    kind = field_of(T, v)
    shift = PolyMat([np.asarray(T), -identity(n, kind)], (n, n), kind)
    tv = PolyMat([zeros(n, 1, kind), np.asarray(v).reshape(-1, 1)], (n, 1), kind)
    return shift @ r_t - tv - l_t
