"""Matrices whose entries are polynomials in one parameter t."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import ShapeMismatch
from .matrices import DEFAULT_TOL, equal, field_of, identity, is_zero, max_abs, to_complex, zeros
from .scalars import FieldKind


class PolyMat:
    """``sum_i coeffs[i] * t**i`` with trailing zero coefficients trimmed."""

    __slots__ = ("shape", "coeffs", "field")

    def __init__(self, coeffs, shape=None, field: FieldKind | None = None, degree_cap: int | None = None):
        coeffs = [np.asarray(c) for c in coeffs]
        if shape is None:
            if not coeffs:
                raise ShapeMismatch("shape is required for an empty coefficient list")
            shape = coeffs[0].shape
        shape = tuple(shape)
        for c in coeffs:
            if c.shape != shape:
                raise ShapeMismatch(f"coefficient shape {c.shape} differs from {shape}")
        if field is None:
            field = field_of(*coeffs) if coeffs else FieldKind.RATIONAL
        if not field.exact:
            coeffs = [to_complex(c) for c in coeffs]
        while coeffs and _exactly_zero(coeffs[-1]):
            coeffs.pop()
        self.shape = shape
        self.coeffs = coeffs
        self.field = field
        if degree_cap is not None and self.degree > degree_cap:
            raise AssertionError(f"polynomial matrix degree {self.degree} exceeds cap {degree_cap}")

    @classmethod
    def constant(cls, m) -> "PolyMat":
        m = np.asarray(m)
        return cls([m], m.shape)

    @classmethod
    def linear(cls, c0, c1) -> "PolyMat":
        return cls([np.asarray(c0), np.asarray(c1)])

    @classmethod
    def zero(cls, rows: int, cols: int, kind: FieldKind = FieldKind.RATIONAL) -> "PolyMat":
        return cls([], (rows, cols), kind)

    @classmethod
    def t_identity(cls, n: int, kind: FieldKind = FieldKind.RATIONAL) -> "PolyMat":
        return cls([zeros(n, n, kind), identity(n, kind)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> np.ndarray:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return zeros(*self.shape, self.field)

    def _lift(self, other) -> "PolyMat":
        if isinstance(other, PolyMat):
            return other
        other = np.asarray(other)
        if other.ndim == 0:
            raise TypeError("scalars must be multiplied, not added, to a PolyMat")
        return PolyMat.constant(other)

    def __add__(self, other) -> "PolyMat":
        other = self._lift(other)
        if other.shape != self.shape:
            raise ShapeMismatch(f"cannot add shapes {self.shape} and {other.shape}")
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyMat([self.coefficient(i) + other.coefficient(i) for i in range(n)], self.shape,
                       _merge(self.field, other.field))

    __radd__ = __add__

    def __neg__(self) -> "PolyMat":
        return PolyMat([-c for c in self.coeffs], self.shape, self.field)

    def __sub__(self, other) -> "PolyMat":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PolyMat":
        return self._lift(other) + (-self)

    def __matmul__(self, other) -> "PolyMat":
        other = self._lift(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply shapes {self.shape} and {other.shape}")
        shape = (self.shape[0], other.shape[1])
        kind = _merge(self.field, other.field)
        if not self.coeffs or not other.coeffs:
            return PolyMat([], shape, kind)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                term = a @ b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return PolyMat(out, shape, kind)

    def __rmatmul__(self, other) -> "PolyMat":
        return self._lift(other) @ self

    def __mul__(self, c) -> "PolyMat":
        """Multiplication by a scalar."""
        if isinstance(c, (PolyMat, np.ndarray)):
            raise TypeError("use @ for matrix products")
        return PolyMat([c * m for m in self.coeffs], self.shape, self.field)

    __rmul__ = __mul__

    @property
    def T(self) -> "PolyMat":
        return PolyMat([c.T for c in self.coeffs], (self.shape[1], self.shape[0]), self.field)

    def times_t(self, power: int = 1) -> "PolyMat":
        pad = [zeros(*self.shape, self.field)] * power
        return PolyMat(pad + list(self.coeffs), self.shape, self.field) if self.coeffs else self

    def eval(self, t) -> np.ndarray:
        if not self.field.exact:
            t = complex(t)
        out = zeros(*self.shape, self.field)
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def shift(self, t0) -> "PolyMat":
        """The polynomial matrix ``p(t + t0)``."""
        out = PolyMat([], self.shape, self.field)
        for c in reversed(self.coeffs):
            out = out.times_t() + out * t0 + PolyMat.constant(c)
        return out

    def block(self, rows: slice, cols: slice) -> "PolyMat":
        sub = [c[rows, cols] for c in self.coeffs]
        shape = zeros(*self.shape, self.field)[rows, cols].shape
        return PolyMat(sub, shape, self.field)

    def residual_is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        if self.field.exact:
            return not self.coeffs
        return all(is_zero(c, tol) for c in self.coeffs)

    def nonzero_coefficients(self, tol: float = DEFAULT_TOL) -> list[int]:
        if self.field.exact:
            return list(range(len(self.coeffs)))
        return [i for i, c in enumerate(self.coeffs) if not is_zero(c, tol)]

    def max_coefficient(self) -> float:
        return max((max_abs(c) for c in self.coeffs), default=0.0)

    def equals(self, other: "PolyMat", tol: float = DEFAULT_TOL) -> bool:
        if self.shape != other.shape:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        return all(equal(self.coefficient(i), other.coefficient(i), tol) for i in range(n))

    def to_field(self, kind: FieldKind) -> "PolyMat":
        from .matrices import convert

        return PolyMat([convert(c, kind) for c in self.coeffs], self.shape, kind)

    def __repr__(self) -> str:
        return f"PolyMat(shape={self.shape}, degree={self.degree}, field={self.field.value})"


def _exactly_zero(m: np.ndarray) -> bool:
    if m.size == 0:
        return True
    if m.dtype == object:
        return all(x == 0 for x in m.flat)
    return not np.any(m)


def _merge(a: FieldKind, b: FieldKind) -> FieldKind:
    if FieldKind.COMPLEX in (a, b):
        return FieldKind.COMPLEX
    if FieldKind.GAUSSIAN_RATIONAL in (a, b):
        return FieldKind.GAUSSIAN_RATIONAL
    return FieldKind.RATIONAL


def poly_block(blocks: list[list]) -> PolyMat:
    """Assemble a block PolyMat from a grid of PolyMat / constant matrix blocks."""
    grid = [[b if isinstance(b, PolyMat) else PolyMat.constant(b) for b in row] for row in blocks]
    kind = FieldKind.RATIONAL
    for row in grid:
        for b in row:
            kind = _merge(kind, b.field)
    deg = max(b.degree for row in grid for b in row)
    coeffs = []
    for i in range(deg + 1):
        coeffs.append(np.block([[b.coefficient(i) for b in row] for row in grid]).astype(
            object if kind.exact else complex))
    rows = sum(row[0].shape[0] for row in grid)
    cols = sum(b.shape[1] for b in grid[0])
    return PolyMat(coeffs, (rows, cols), kind)


def scalar_poly_det(p: PolyMat) -> list:
    """Determinant of a square exact PolyMat as a coefficient list (lowest first).

    Computed by evaluation at deg*n + 1 integer points and Lagrange interpolation.
    """
    from . import poly
    from .elimination import determinant

    n = p.shape[0]
    if p.shape != (n, n):
        raise ShapeMismatch("determinant of a non-square polynomial matrix")
    bound = max(p.degree, 0) * n
    points = [Fraction(i) for i in range(bound + 1)]
    values = [determinant(p.eval(t)) if n else Fraction(1) for t in points]
    result: list = []
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j != i:
                basis = poly.mul(basis, [-xj, Fraction(1)])
                denom *= xi - xj
        result = poly.add(result, poly.scale(basis, yi / denom))
    return result
