"""Linearized equations, tangent dimensions and smoothness of the moduli space.

A tangent vector is flattened as ``[vec X_A, vec X_B, vec X_I, sym(X_G)]`` where
``vec`` is row-major and ``sym`` lists the upper-triangular entries of the
symmetric matrix X_G (i <= j).  The two symmetry equations take antisymmetric
values and are recorded on their strictly upper-triangular entries; the ADHM
equation is recorded in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adhm import SymplecticDatum, is_nonderogatory_pair, is_stable
from .errors import NotStable, PipelineError
from .linalg import DEFAULT_TOL, FieldKind, identity, is_zero, rank, rank_margin, to_complex, zeros
from .linalg.matrices import kron


@dataclass(frozen=True, eq=False)
class TangentVector:
    X_A: np.ndarray
    X_B: np.ndarray
    X_I: np.ndarray
    X_G: np.ndarray

    def flatten(self) -> np.ndarray:
        n = self.X_A.shape[0]
        iu = np.triu_indices(n)
        return np.concatenate([self.X_A.reshape(-1), self.X_B.reshape(-1), self.X_I.reshape(-1),
                               self.X_G[iu]])

    @classmethod
    def unflatten(cls, v, n: int, r: int) -> "TangentVector":
        v = np.asarray(v).reshape(-1)
        nn = n * n
        X_A = v[:nn].reshape(n, n)
        X_B = v[nn:2 * nn].reshape(n, n)
        X_I = v[2 * nn:2 * nn + n * r].reshape(n, r)
        coords = v[2 * nn + n * r:]
        X_G = np.empty((n, n), dtype=v.dtype)
        iu = np.triu_indices(n)
        X_G[iu] = coords
        X_G.T[iu] = coords
        return cls(X_A, X_B, X_I, X_G)


@dataclass(frozen=True)
class TangentReport:
    n: int
    r: int
    ambient_dim: int
    jac_rank: int
    ker_dim: int
    orbit_dim: int
    moduli_tangent_dim: int
    expected_dim: int
    smooth: bool
    exact: bool
    rank_margin: float | None = None

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in ("n", "r", "ambient_dim", "jac_rank", "ker_dim", "orbit_dim",
                                             "moduli_tangent_dim", "expected_dim", "smooth", "exact")}
        if self.rank_margin is not None:
            out["rank_margin"] = self.rank_margin
        return out


def ambient_dim(n: int, r: int) -> int:
    return 2 * n * n + n * r + n * (n + 1) // 2


def _sym_embedding(n: int, kind: FieldKind) -> np.ndarray:
    """n^2 x n(n+1)/2 matrix sending upper-triangular coordinates to vec of the symmetric matrix."""
    iu = list(zip(*np.triu_indices(n)))
    S = zeros(n * n, len(iu), kind)
    for c, (i, j) in enumerate(iu):
        S[i * n + j, c] = S[i * n + j, c] + 1
        if i != j:
            S[j * n + i, c] = S[j * n + i, c] + 1
    return S


def _transpose_operator(rows: int, cols: int, kind: FieldKind) -> np.ndarray:
    """Matrix sending vec(X) to vec(X^T) for X of shape (rows, cols)."""
    T = zeros(rows * cols, rows * cols, kind)
    for i in range(rows):
        for j in range(cols):
            T[j * rows + i, i * cols + j] = T[j * rows + i, i * cols + j] + 1
    return T


def _upper_rows(n: int) -> list[int]:
    return [i * n + j for i in range(n) for j in range(i + 1, n)]


def _datum_matrices(d: SymplecticDatum):
    kind = d.field
    K = d.omega.inverse
    if not kind.exact:
        return kind, to_complex(d.A), to_complex(d.B), to_complex(d.I), to_complex(d.G), to_complex(K)
    return kind, d.A, d.B, d.I, d.G, K


def jacobian(d: SymplecticDatum) -> np.ndarray:
    """Matrix of the linearized equations at d acting on flattened tangent vectors."""
    kind, A, B, I, G, K = _datum_matrices(d)
    n, r = d.n, d.r
    one = identity(n, kind)
    S = _sym_embedding(n, kind)
    Tn = _transpose_operator(n, n, kind)
    Tnr = _transpose_operator(n, r, kind)
    up = _upper_rows(n)

    dXA = kron(G, one) - kron(one, G) @ Tn
    zero_nn = zeros(n * n, n * n, kind)
    zero_nr = zeros(n * n, n * r, kind)
    blocks = []
    for which, M in (("A", A), ("B", B)):
        dXG = (kron(one, M.T) - kron(M.T, one)) @ S
        xa, xb = (dXA, zero_nn) if which == "A" else (zero_nn, dXA)
        blocks.append(np.concatenate([xa, xb, zero_nr, dXG], axis=1)[up])
    KIG = K @ I.T @ G
    dA = kron(one, B.T) - kron(B, one)
    dB = kron(A, one) - kron(one, A.T)
    dI = -(kron(one, KIG.T) + kron(I @ K, G.T) @ Tnr)
    dG = -kron(I @ K @ I.T, one) @ S
    blocks.append(np.concatenate([dA, dB, dI, dG], axis=1))
    return np.concatenate(blocks, axis=0)


def linearized_equations(d: SymplecticDatum, v: TangentVector) -> np.ndarray:
    """The three linearized equations evaluated directly on a tangent vector (same layout as jacobian)."""
    kind, A, B, I, G, K = _datum_matrices(d)
    XA, XB, XI, XG = v.X_A, v.X_B, v.X_I, v.X_G
    e1 = G @ XA - XA.T @ G + XG @ A - A.T @ XG
    e2 = G @ XB - XB.T @ G + XG @ B - B.T @ XG
    e3 = (XA @ B - B @ XA) + (A @ XB - XB @ A) - (XI @ K @ I.T @ G + I @ K @ XI.T @ G + I @ K @ I.T @ XG)
    up = _upper_rows(d.n)
    return np.concatenate([e1.reshape(-1)[up], e2.reshape(-1)[up], e3.reshape(-1)])


def residual_map(A, B, I, G, K, n: int) -> np.ndarray:
    """Equation residuals in the jacobian's row layout (for finite-difference checks)."""
    up = _upper_rows(n)
    e1 = G @ A - A.T @ G
    e2 = G @ B - B.T @ G
    e3 = A @ B - B @ A - I @ K @ I.T @ G
    return np.concatenate([e1.reshape(-1)[up], e2.reshape(-1)[up], e3.reshape(-1)])


def orbit_map(d: SymplecticDatum) -> np.ndarray:
    """Matrix of x -> ([x, A], [x, B], x I, -x^T G - G x) into flattened tangent vectors."""
    kind, A, B, I, G, K = _datum_matrices(d)
    n, r = d.n, d.r
    one = identity(n, kind)
    Tn = _transpose_operator(n, n, kind)
    dA = kron(one, A.T) - kron(A, one)
    dB = kron(one, B.T) - kron(B, one)
    dI = kron(one, I.T)
    dG_full = -(kron(one, G) @ Tn + kron(G, one))
    iu = [i * n + j for i, j in zip(*np.triu_indices(n))]
    return np.concatenate([dA, dB, dI, dG_full[iu]], axis=0)


def tangent_report(d: SymplecticDatum, require_stable: bool = True) -> TangentReport:
    """Jacobian kernel, orbit dimension and the resulting moduli tangent dimension at d."""
    if require_stable and not is_stable(d):
        raise NotStable("tangent dimension of the moduli space needs a stable datum")
    n, r = d.n, d.r
    exact = d.field.exact
    J = jacobian(d)
    O = orbit_map(d)
    amb = ambient_dim(n, r)
    margin = None
    if exact:
        jr = rank(J) if J.size else 0
        orbit = rank(O) if O.size else 0
        if not is_zero(J @ O):
            raise PipelineError("orbit directions are not tangent to the equations")
    else:
        jr, m1 = rank_margin(J, d.tol) if J.size else (0, float("inf"))
        orbit, m2 = rank_margin(O, d.tol) if O.size else (0, float("inf"))
        margin = float(min(m1, m2))
    ker = amb - jr
    moduli = ker - orbit
    expected = r * n + 2 * n
    return TangentReport(n, r, amb, jr, ker, orbit, moduli, expected, moduli == expected, exact, margin)


def is_smooth_point(d: SymplecticDatum) -> bool:
    """Smoothness from the tangent dimension, cross-checked against the nonderogatory criterion."""
    report = tangent_report(d)
    if d.field.exact and not report.smooth and is_nonderogatory_pair(d):
        raise PipelineError("A or B is nonderogatory but the tangent space has excess dimension")
    return report.smooth


__all__ = ["TangentReport", "TangentVector", "ambient_dim", "is_smooth_point", "jacobian",
           "linearized_equations", "orbit_map", "residual_map", "tangent_report"]
