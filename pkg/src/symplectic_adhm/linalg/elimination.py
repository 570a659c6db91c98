"""Row reduction in every supported field.

Rational matrices are scaled row by row to integers and reduced with
fraction-free (Bareiss) elimination, so intermediate entries stay integral
minors.  Gaussian rational matrices use plain Gauss-Jordan over Q(i).
Float matrices go through the SVD with a relative singular-value threshold.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import NoSolution, ShapeMismatch
from .matrices import DEFAULT_TOL, field_of, one_scalar, to_complex, zero_scalar, zeros
from .scalars import FieldKind, GaussianRational


def _integer_rows(m) -> list[list[int]]:
    rows = []
    for row in np.asarray(m):
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append([x.numerator * (den // x.denominator) for x in row])
    return rows


def _bareiss(rows: list[list[int]], ncols: int, full: bool):
    """Fraction-free elimination in place.

    With ``full`` the rows above each pivot are cleared too (fraction-free
    Gauss-Jordan).  Returns the pivot columns and the sign of the row
    permutation.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    sign = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        prow = rows[r]
        targets = range(nrows) if full else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            f = rows[i][c]
            row = rows[i]
            if f == 0:
                if piv != prev:
                    rows[i] = [x * piv // prev for x in row]
                continue
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, sign


def _gauss_jordan(m) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over an exact field with generic scalars."""
    rows = [list(row) for row in np.asarray(m)]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of an exact matrix."""
    m = np.asarray(m)
    kind = field_of(m)
    if kind is FieldKind.COMPLEX:
        raise TypeError("rref is only defined for exact matrices")
    nrows, ncols = m.shape
    if kind is FieldKind.RATIONAL:
        rows = _integer_rows(m)
        pivots, _ = _bareiss(rows, ncols, full=True)
        out = zeros(nrows, ncols, kind)
        for i, c in enumerate(pivots):
            piv = rows[i][c]
            out[i] = [Fraction(x, piv) for x in rows[i]]
        return out, pivots
    rows, pivots = _gauss_jordan(m)
    out = zeros(nrows, ncols, kind)
    for i in range(len(pivots)):
        out[i] = rows[i]
    return out, pivots


def _singular_values(m) -> np.ndarray:
    m = to_complex(m)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def _float_rank(m, tol: float) -> int:
    s = _singular_values(m)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * max(1.0, s[0])))


def rank(m, tol: float = DEFAULT_TOL) -> int:
    """Rank; exact for exact matrices, SVD threshold ``tol * max(1, s_max)`` for floats."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise ShapeMismatch("rank expects a 2-d matrix")
    if m.size == 0:
        return 0
    kind = field_of(m)
    if kind is FieldKind.COMPLEX:
        return _float_rank(m, tol)
    if kind is FieldKind.RATIONAL:
        rows = _integer_rows(m)
        pivots, _ = _bareiss(rows, m.shape[1], full=False)
        return len(pivots)
    return len(_gauss_jordan(m)[1])


def rank_margin(m, tol: float = DEFAULT_TOL) -> tuple[int, float]:
    """Float rank together with the distance of the nearest singular value to the threshold."""
    s = _singular_values(m)
    if s.size == 0:
        return 0, math.inf
    threshold = tol * max(1.0, s[0])
    r = int(np.sum(s > threshold))
    kept = s[r - 1] / threshold if r else math.inf
    dropped = threshold / s[r] if r < s.size and s[r] > 0 else math.inf
    return r, float(min(kept, dropped))


def nullspace(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix whose columns form a basis of the right null space."""
    m = np.asarray(m)
    nrows, ncols = m.shape
    kind = field_of(m)
    if kind is FieldKind.COMPLEX:
        mc = to_complex(m)
        if nrows == 0 or ncols == 0:
            return np.eye(ncols, dtype=complex)
        _, s, vh = np.linalg.svd(mc)
        r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
        return vh[r:].conj().T.copy()
    if nrows == 0:
        out = zeros(ncols, ncols, kind)
        for i in range(ncols):
            out[i, i] = one_scalar(kind)
        return out
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = zeros(ncols, len(free), kind)
    for j, f in enumerate(free):
        out[f, j] = one_scalar(kind)
        for i, p in enumerate(pivots):
            out[p, j] = -red[i, f]
    return out


def solve_linear(op, rhs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """One particular solution ``x`` of ``op @ x = rhs``; raises NoSolution if inconsistent."""
    op = np.asarray(op)
    rhs = np.asarray(rhs)
    vector = rhs.ndim == 1
    if vector:
        rhs = rhs.reshape(-1, 1)
    if op.shape[0] != rhs.shape[0]:
        raise ShapeMismatch(f"operator has {op.shape[0]} rows, right-hand side has {rhs.shape[0]}")
    kind = field_of(op, rhs)
    nvars = op.shape[1]
    if kind is FieldKind.COMPLEX:
        a, b = to_complex(op), to_complex(rhs)
        if a.size == 0:
            x = np.zeros((nvars, b.shape[1]), dtype=complex)
        else:
            x = np.linalg.lstsq(a, b, rcond=None)[0]
        scale = max(1.0, float(np.max(np.abs(b))) if b.size else 0.0,
                    (float(np.max(np.abs(a))) * float(np.max(np.abs(x)))) if a.size and x.size else 0.0)
        if b.size and float(np.max(np.abs(a @ x - b))) > tol * scale:
            raise NoSolution("right-hand side is outside the column space")
        return x.ravel() if vector else x
    if kind is FieldKind.GAUSSIAN_RATIONAL:
        from .matrices import convert

        op, rhs = convert(op, kind), convert(rhs, kind)
    aug = np.concatenate([op, rhs], axis=1) if op.size else np.concatenate([zeros(rhs.shape[0], nvars, kind), rhs], axis=1)
    if aug.shape[0] == 0:
        x = zeros(nvars, rhs.shape[1], kind)
        return x.ravel() if vector else x
    red, pivots = rref(aug)
    if any(p >= nvars for p in pivots):
        raise NoSolution("right-hand side is outside the column space")
    x = zeros(nvars, rhs.shape[1], kind)
    for i, p in enumerate(pivots):
        x[p] = red[i, nvars:]
    return x.ravel() if vector else x


def determinant(m):
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeMismatch("determinant of a non-square matrix")
    kind = field_of(m)
    if n == 0:
        return one_scalar(kind)
    if kind is FieldKind.COMPLEX:
        return complex(np.linalg.det(to_complex(m)))
    if kind is FieldKind.RATIONAL:
        fr = [[Fraction(x) for x in row] for row in m]
        rows = _integer_rows(m)
        scale = Fraction(1)
        for orig, scaled in zip(fr, rows):
            nz = next((k for k, x in enumerate(orig) if x != 0), None)
            if nz is not None:
                scale *= Fraction(scaled[nz]) / orig[nz]
        pivots, sign = _bareiss(rows, n, full=False)
        if len(pivots) < n:
            return Fraction(0)
        return Fraction(sign * rows[n - 1][n - 1]) / scale
    rows = [list(row) for row in m]
    out = GaussianRational(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return zero_scalar(kind)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            out = -out
        piv = rows[c][c]
        out = out * piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f != 0:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out
