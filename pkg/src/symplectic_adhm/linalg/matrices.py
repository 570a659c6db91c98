"""Dense matrices as numpy arrays.

Exact matrices are ``dtype=object`` arrays holding :class:`fractions.Fraction`
or :class:`GaussianRational` entries; float matrices are ``complex128``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import ShapeMismatch, Singular
from .scalars import FieldKind, GaussianRational, to_exact

DEFAULT_TOL = 1e-9


def field_of(*mats) -> FieldKind:
    """The common field of the given matrices (complex wins over exact)."""
    kind = FieldKind.RATIONAL
    for m in mats:
        m = np.asarray(m)
        if m.dtype != object:
            if np.iscomplexobj(m) or np.issubdtype(m.dtype, np.floating):
                return FieldKind.COMPLEX
            continue
        for x in m.flat:
            if isinstance(x, GaussianRational):
                kind = FieldKind.GAUSSIAN_RATIONAL
            elif isinstance(x, (float, complex)):
                return FieldKind.COMPLEX
    return kind


def as_matrix(data, kind: FieldKind | None = None, shape=None) -> np.ndarray:
    """Build a 2-d matrix in the requested field from nested lists or an array."""
    arr = np.asarray(data, dtype=object)
    if kind is None:
        kind = field_of(arr)
    if kind is FieldKind.COMPLEX:
        out = to_complex(arr)
    else:
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = to_exact(x, kind)
    if out.ndim == 1:
        out = out.reshape(-1, 1) if shape is None else out.reshape(shape)
    if shape is not None and out.shape != tuple(shape):
        raise ShapeMismatch(f"expected shape {tuple(shape)}, got {out.shape}")
    return out


def convert(m, kind: FieldKind) -> np.ndarray:
    """Re-express ``m`` in field ``kind`` (exact to float is lossy, float to exact refused)."""
    m = np.asarray(m)
    src = field_of(m)
    if kind is FieldKind.COMPLEX:
        return to_complex(m)
    if src is FieldKind.COMPLEX:
        raise TypeError("cannot convert a float matrix into an exact field")
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = to_exact(x, kind)
    return out


def to_complex(m) -> np.ndarray:
    m = np.asarray(m)
    if m.dtype != object:
        return m.astype(complex)
    out = np.empty(m.shape, dtype=complex)
    for idx, x in np.ndenumerate(m):
        out[idx] = complex(x) if not isinstance(x, Fraction) else float(x)
    return out


def zero_scalar(kind: FieldKind):
    if kind is FieldKind.COMPLEX:
        return 0j
    if kind is FieldKind.GAUSSIAN_RATIONAL:
        return GaussianRational(0)
    return Fraction(0)


def one_scalar(kind: FieldKind):
    if kind is FieldKind.COMPLEX:
        return 1 + 0j
    if kind is FieldKind.GAUSSIAN_RATIONAL:
        return GaussianRational(1)
    return Fraction(1)


def zeros(rows: int, cols: int, kind: FieldKind = FieldKind.RATIONAL) -> np.ndarray:
    if kind is FieldKind.COMPLEX:
        return np.zeros((rows, cols), dtype=complex)
    return np.full((rows, cols), zero_scalar(kind), dtype=object)


def identity(n: int, kind: FieldKind = FieldKind.RATIONAL) -> np.ndarray:
    out = zeros(n, n, kind)
    for i in range(n):
        out[i, i] = one_scalar(kind)
    return out


def diag(values, kind: FieldKind = FieldKind.RATIONAL) -> np.ndarray:
    values = list(values)
    out = zeros(len(values), len(values), kind)
    for i, v in enumerate(values):
        out[i, i] = v if kind is FieldKind.COMPLEX else to_exact(v, kind)
    return out


def scalar(value, kind: FieldKind):
    return complex(value) if kind is FieldKind.COMPLEX else to_exact(value, kind)


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def max_abs(m) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    if m.dtype == object:
        return max(abs(complex(x)) if not isinstance(x, Fraction) else abs(float(x)) for x in m.flat)
    return float(np.max(np.abs(m)))


def is_zero(m, tol: float = DEFAULT_TOL, scale: float = 1.0) -> bool:
    """Exact zero test for exact matrices, tolerance test (relative to ``scale``) for floats."""
    m = np.asarray(m)
    if m.size == 0:
        return True
    if m.dtype == object and field_of(m).exact:
        return all(x == 0 for x in m.flat)
    return max_abs(m) <= tol * max(1.0, scale)


def equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    if field_of(a, b).exact:
        return all(x == y for x, y in zip(a.flat, b.flat))
    return is_zero(to_complex(a) - to_complex(b), tol, max(max_abs(a), max_abs(b)))


def is_symmetric(m, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and equal(m, m.T, tol)


def require_square(m, name: str = "matrix") -> int:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {m.shape}")
    return m.shape[0]


def vec(m) -> np.ndarray:
    """Row-major flattening into a column vector."""
    m = np.asarray(m)
    return m.reshape(-1, 1)


def kron(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype != object and b.dtype != object:
        return np.kron(a, b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.empty((ra * rb, ca * cb), dtype=object)
    for i in range(ra):
        for j in range(ca):
            out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a[i, j] * b
    return out


def inverse(m) -> np.ndarray:
    from .elimination import solve_linear
    from ..errors import NoSolution

    n = require_square(m)
    kind = field_of(m)
    if kind is FieldKind.COMPLEX:
        m = to_complex(m)
        if n and np.linalg.matrix_rank(m) < n:
            raise Singular("matrix is not invertible")
        return np.linalg.inv(m) if n else m.copy()
    from .elimination import rank

    if rank(m) < n:
        raise Singular("matrix is not invertible")
    try:
        return solve_linear(m, identity(n, kind))
    except NoSolution as exc:  # pragma: no cover - excluded by the rank test
        raise Singular("matrix is not invertible") from exc


def det(m):
    from .elimination import determinant

    return determinant(m)


def matrix_power(m, k: int) -> np.ndarray:
    n = require_square(m)
    out = identity(n, field_of(m))
    for _ in range(k):
        out = out @ m
    return out


def block_diag(*blocks, kind: FieldKind | None = None) -> np.ndarray:
    if kind is None:
        kind = field_of(*blocks)
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols, kind)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out
