"""Congruence normal forms of symmetric matrices."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ..errors import NotSymmetric, Singular
from .matrices import (DEFAULT_TOL, diag, equal, field_of, identity, inverse, is_symmetric, max_abs,
                       to_complex)
from .scalars import FieldKind, exact_sqrt


@dataclass(frozen=True, eq=False)
class Congruence:
    """``g`` with ``g^-T G g^-1 = diag(weights, 0)``; unpacks as ``(g, k)``."""

    g: np.ndarray
    k: int
    weights: tuple
    weighted: bool

    def __iter__(self):
        return iter((self.g, self.k))

    @property
    def normal_form(self) -> np.ndarray:
        n = self.g.shape[0]
        kind = field_of(self.g)
        values = list(self.weights) + [0] * (n - self.k)
        return diag(values, kind) if kind.exact else np.diag(np.array(values, dtype=complex))


def _ldl(G, tol: float):
    """Return ``P`` and ``d`` with ``P G P^T = diag(d)`` (nonzero entries of d first)."""
    M = np.array(G, copy=True)
    n = M.shape[0]
    kind = field_of(M)
    exact = kind.exact
    P = identity(n, kind) if exact else np.eye(n, dtype=complex)
    scale = max(1.0, max_abs(M))

    def nonzero(x) -> bool:
        return x != 0 if exact else abs(x) > tol * scale

    def swap(i, j):
        if i != j:
            M[[i, j]] = M[[j, i]]
            M[:, [i, j]] = M[:, [j, i]]
            P[[i, j]] = P[[j, i]]

    def add_row(target, source, factor):
        M[target] = M[target] + factor * M[source]
        M[:, target] = M[:, target] + factor * M[:, source]
        P[target] = P[target] + factor * P[source]

    k = 0
    for i in range(n):
        cands = [j for j in range(i, n) if nonzero(M[j, j])]
        pairs = [(j, l) for j in range(i, n) for l in range(j + 1, n) if nonzero(M[j, l])]
        if not cands and not pairs:
            break
        use_pair = not cands
        if not exact and cands and pairs:
            best_diag = max(abs(M[t, t]) for t in cands)
            use_pair = max(abs(M[j, l]) for j, l in pairs) > 2 * best_diag
        if use_pair:
            j, l = pairs[0] if exact else max(pairs, key=lambda p: abs(M[p[0], p[1]]))
            if exact:
                factor = 1 / (2 * M[j, l])
            else:
                factor = 1
                if abs(M[j, j] - 2 * M[j, l] + M[l, l]) > abs(M[j, j] + 2 * M[j, l] + M[l, l]):
                    factor = -1
            add_row(j, l, factor)
            swap(i, j)
        else:
            j = cands[0] if exact else max(cands, key=lambda t: abs(M[t, t]))
            swap(i, j)
        piv = M[i, i]
        for t in range(i + 1, n):
            if nonzero(M[t, i]):
                add_row(t, i, -M[t, i] / piv)
        k += 1
    if not exact:
        M[k:, :] = 0
        M[:, k:] = 0
    return P, [M[i, i] for i in range(k)], M


def symmetric_congruence(G, tol: float = DEFAULT_TOL) -> Congruence:
    """Invertible ``g`` with ``g^-T G g^-1 = diag(1_k, 0)``.

    Exact fields rescale each pivot by its square root when that root lies in
    the field; otherwise the pivot is kept and the result is flagged weighted.
    """
    G = np.asarray(G)
    if not is_symmetric(G, tol):
        raise NotSymmetric("G is not symmetric")
    kind = field_of(G)
    n = G.shape[0]
    if n == 0:
        return Congruence(identity(0, kind) if kind.exact else np.eye(0, dtype=complex), 0, (), False)
    P, d, _ = _ldl(G, tol)
    weights = []
    for i, di in enumerate(d):
        root = cmath.sqrt(complex(di)) if not kind.exact else exact_sqrt(di)
        if root is None:
            if kind is FieldKind.RATIONAL:
                den = di.denominator
                P[i] = P[i] * den
                di = di * den * den
            weights.append(di)
            continue
        P[i] = P[i] / root
        weights.append(1 if kind.exact else 1.0)
    k = len(d)
    if kind.exact:
        from .scalars import to_exact

        weights = [to_exact(w, kind) for w in weights]
    weighted = any(w != 1 for w in weights)
    g = inverse(P.T)
    return Congruence(g, k, tuple(weights), weighted)


def symmetric_factor(g, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``s`` with ``s s^T = g`` for symmetric invertible ``g`` (complex-float)."""
    g = to_complex(g)
    if not is_symmetric(g, tol):
        raise NotSymmetric("matrix is not symmetric")
    n = g.shape[0]
    P, d, _ = _ldl(g, tol)
    if len(d) < n:
        raise Singular("matrix is not invertible")
    root = np.diag(np.sqrt(np.array(d, dtype=complex)))
    s = np.linalg.solve(P, root)
    if not equal(s @ s.T, g, max(tol, 1e-8)):  # pragma: no cover - defensive
        raise Singular("factorization lost accuracy")
    return s


def verify_congruence(G, result: Congruence, tol: float = DEFAULT_TOL) -> bool:
    g = result.g
    ginv = inverse(g)
    return equal(ginv.T @ np.asarray(G) @ ginv, result.normal_form, tol)
