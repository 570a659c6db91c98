"""Subspaces of K^n given by independent column generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NoSolution, ShapeMismatch
from .elimination import nullspace, rank, rref, solve_linear
from .matrices import DEFAULT_TOL, field_of, identity, to_complex, zeros
from .scalars import FieldKind


def _independent_columns(m, tol: float) -> np.ndarray:
    m = np.asarray(m)
    if m.shape[1] == 0:
        return m
    kind = field_of(m)
    if kind is FieldKind.COMPLEX:
        mc = to_complex(m)
        u, s, _ = np.linalg.svd(mc, full_matrices=False)
        r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
        return u[:, :r].copy()
    _, pivots = rref(m)
    return m[:, pivots].copy()


@dataclass(frozen=True, eq=False)
class Subspace:
    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise ShapeMismatch(f"basis must have {self.ambient_dim} rows, got shape {b.shape}")

    @classmethod
    def span(cls, generators, ambient_dim: int | None = None, tol: float = DEFAULT_TOL) -> "Subspace":
        """Subspace spanned by the columns of ``generators`` (dependent columns dropped)."""
        g = np.asarray(generators)
        if g.ndim == 1:
            g = g.reshape(-1, 1)
        dim = g.shape[0] if ambient_dim is None else ambient_dim
        return cls(dim, _independent_columns(g, tol))

    @classmethod
    def zero(cls, ambient_dim: int, kind: FieldKind = FieldKind.RATIONAL) -> "Subspace":
        return cls(ambient_dim, zeros(ambient_dim, 0, kind))

    @classmethod
    def whole(cls, ambient_dim: int, kind: FieldKind = FieldKind.RATIONAL) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim, kind))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def field(self) -> FieldKind:
        return field_of(self.basis)

    def contains(self, vectors, tol: float = DEFAULT_TOL) -> bool:
        v = np.asarray(vectors)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        if v.shape[1] == 0:
            return True
        if self.dim == 0:
            from .matrices import is_zero

            return is_zero(v, tol)
        try:
            solve_linear(self.basis, v, tol)
        except NoSolution:
            return False
        return True

    def contains_subspace(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        return self.contains(other.basis, tol)

    def equals(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains_subspace(other, tol))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.concatenate([self.basis, other.basis], axis=1), self.ambient_dim)

    def image(self, op) -> "Subspace":
        return Subspace.span(np.asarray(op) @ self.basis, np.asarray(op).shape[0])

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim


def column_space(m, tol: float = DEFAULT_TOL) -> Subspace:
    m = np.asarray(m)
    return Subspace.span(m, m.shape[0], tol)


def kernel_basis(m, tol: float = DEFAULT_TOL) -> Subspace:
    """Right null space of ``m``; rank(m) + dim = cols(m)."""
    m = np.asarray(m)
    return Subspace(m.shape[1], nullspace(m, tol))


def krylov_closure(seed: Subspace, ops, tol: float = DEFAULT_TOL) -> Subspace:
    """Smallest subspace containing ``seed`` and invariant under every operator in ``ops``."""
    ops = [np.asarray(op) for op in ops]
    for op in ops:
        if op.shape != (seed.ambient_dim, seed.ambient_dim):
            raise ShapeMismatch(f"operator shape {op.shape} does not act on dimension {seed.ambient_dim}")
    current = seed
    for _ in range(seed.ambient_dim + 1):
        if current.dim == 0 or current.is_full():
            return current
        gens = [current.basis] + [op @ current.basis for op in ops]
        grown = Subspace.span(np.concatenate(gens, axis=1), seed.ambient_dim, tol)
        if grown.dim == current.dim:
            return current
        current = grown
    return current


def intersection(u: Subspace, w: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient_dim, field_of(u.basis, w.basis))
    k = nullspace(np.concatenate([u.basis, -w.basis], axis=1), tol)
    return Subspace.span(u.basis @ k[: u.dim], u.ambient_dim, tol)


__all__ = ["Subspace", "column_space", "kernel_basis", "krylov_closure", "intersection", "rank"]
