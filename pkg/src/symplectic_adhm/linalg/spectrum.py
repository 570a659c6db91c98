"""Joint spectrum of a commuting pair of matrices.

Both paths reduce to the spectrum of a single combination ``alpha + c*beta``
with ``c`` chosen so that distinct joint eigenvalue pairs stay distinct.

Exact inputs: multiplicities come from the squarefree decomposition of exact
characteristic polynomials; roots are located with high precision and
returned as exact rationals (or Gaussian rationals) whenever they are.
Float inputs: eigenvalues of the combination are clustered, and each cluster's
invariant subspace (from an ordered Schur form) yields the averaged pair.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import mpmath
import numpy as np
import scipy.linalg

from ..errors import NotCommuting, ShapeMismatch
from . import poly
from .matrices import DEFAULT_TOL, commutator, field_of, is_zero, max_abs, require_square, to_complex
from .scalars import FieldKind, GaussianRational
from .structure import charpoly

_FLOAT_MIX = [0.5377 + 0.3119j, 1.2183 - 0.7071j, -0.3861 + 1.1523j]
_PRECISION = 80


def spectrum_key(pair) -> tuple:
    a, b = complex(pair[0]), complex(pair[1])
    return (round(abs(a), 9), round(cmath.phase(a), 9) if a else 0.0,
            round(abs(b), 9), round(cmath.phase(b), 9) if b else 0.0)


def _exact_roots(p: list, kind: FieldKind) -> list[tuple[object, int]]:
    """Roots of an exact polynomial with multiplicities; exact scalars when they are rational."""
    out = []
    for mult, factor in enumerate(poly.squarefree_decomposition(p), start=1):
        if poly.degree(factor) <= 0:
            continue
        for root in _squarefree_roots(factor, kind):
            out.append((root, mult))
    return out


def _squarefree_roots(factor: list, kind: FieldKind) -> list:
    deg = poly.degree(factor)
    if deg == 1:
        return [-factor[0] / factor[1]]
    with mpmath.workdps(_PRECISION):
        coeffs = [_to_mp(c) for c in reversed(factor)]
        approx = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * _PRECISION)
    bound = _denominator_bound(factor, kind)
    roots = []
    for z in approx:
        exact = _rationalize(z, factor, kind, bound)
        roots.append(exact if exact is not None else complex(z))
    return roots


def _to_mp(c):
    if isinstance(c, GaussianRational):
        return mpmath.mpc(_to_mp(c.re), _to_mp(c.im))
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def _denominator_bound(factor: list, kind: FieldKind) -> int:
    if kind is FieldKind.RATIONAL:
        return max(1, abs(poly.primitive_integer(factor)[-1]))
    return 10 ** 6


def _rationalize(z, factor: list, kind: FieldKind, bound: int):
    re = Fraction(str(mpmath.nstr(mpmath.re(z), 40))).limit_denominator(bound)
    im = Fraction(str(mpmath.nstr(mpmath.im(z), 40))).limit_denominator(bound)
    cand = re if kind is FieldKind.RATIONAL else GaussianRational(re, im)
    with mpmath.workdps(_PRECISION):
        if abs(_to_mp(cand) - z) > mpmath.mpf(10) ** -30:
            return None
    return cand if poly.evaluate(factor, cand) == 0 else None


def _separation_ok(points_a, points_b, c) -> bool:
    values = [complex(a) + complex(c) * complex(b) for a in points_a for b in points_b]
    scale = max([1.0] + [abs(v) for v in values])
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) < 1e-12 * scale:
                return False
    return True


def _exact_joint(alpha, beta, kind: FieldKind) -> list[tuple]:
    roots_a = [r for r, _ in _exact_roots(charpoly(alpha), kind)]
    roots_b = [r for r, _ in _exact_roots(charpoly(beta), kind)]
    # each colliding pair rules out one value of c, so enough integers always contain a good one
    count = (len(roots_a) * len(roots_b)) ** 2 + 1
    for c in (Fraction(j) for j in range(1, count + 1)):
        if not _separation_ok(roots_a, roots_b, c):
            continue
        gamma = alpha + c * beta
        pairs = []
        for lam, mult in _exact_roots(charpoly(gamma), kind):
            lam_c = complex(lam)
            best = min(((a, b) for a in roots_a for b in roots_b),
                       key=lambda ab: abs(complex(ab[0]) + complex(c) * complex(ab[1]) - lam_c))
            pairs.extend([best] * mult)
        return pairs
    raise RuntimeError("no separating combination found for the joint spectrum")  # pragma: no cover


def _clusters(values: np.ndarray, threshold: float) -> list[list[int]]:
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= threshold:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(values)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _float_joint(alpha, beta, tol: float) -> list[tuple]:
    a, b = to_complex(alpha), to_complex(beta)
    m = a.shape[0]
    scale = max(1.0, max_abs(a), max_abs(b))
    threshold = tol ** (1.0 / 3.0) * scale
    c = _FLOAT_MIX[0]
    gamma = a + c * b
    ev = np.linalg.eigvals(gamma)
    pairs = []
    for group in _clusters(ev, threshold):
        center = complex(np.mean(ev[group]))
        size = len(group)
        _, q, sdim = scipy.linalg.schur(gamma, output="complex",
                                        sort=lambda z, center=center: abs(z - center) <= threshold)
        if sdim != size:
            size = sdim
        basis = q[:, :size]
        a_val = complex(np.trace(basis.conj().T @ a @ basis)) / size
        b_val = complex(np.trace(basis.conj().T @ b @ basis)) / size
        pairs.extend([(a_val, b_val)] * size)
    if len(pairs) != m:  # pragma: no cover - defensive
        raise RuntimeError("eigenvalue clustering lost multiplicity")
    return pairs


def joint_spectrum(alpha, beta, tol: float = DEFAULT_TOL) -> list[tuple]:
    """Multiset of simultaneous eigenvalue pairs of commuting ``alpha`` and ``beta``.

    Exact inputs give Fraction / GaussianRational entries where the eigenvalue
    lies in the base field and Python complex numbers otherwise.
    """
    m = require_square(alpha, "alpha")
    if require_square(beta, "beta") != m:
        raise ShapeMismatch("alpha and beta must have equal size")
    kind = field_of(alpha, beta)
    scale = max(1.0, max_abs(alpha), max_abs(beta)) ** 2
    if not is_zero(commutator(alpha, beta), tol, scale):
        raise NotCommuting("alpha and beta do not commute")
    if m == 0:
        return []
    if kind is FieldKind.COMPLEX:
        pairs = _float_joint(alpha, beta, tol)
    else:
        pairs = _exact_joint(np.asarray(alpha), np.asarray(beta), kind)
    return sorted(pairs, key=spectrum_key)


def multiset_close(p: list[tuple], q: list[tuple], tol: float = 1e-6) -> bool:
    """Compare two joint-spectrum multisets (exactly when both entries are exact)."""
    if len(p) != len(q):
        return False
    remaining = list(q)
    for a, b in p:
        for idx, (c, d) in enumerate(remaining):
            if _scalar_close(a, c, tol) and _scalar_close(b, d, tol):
                del remaining[idx]
                break
        else:
            return False
    return True


def _scalar_close(x, y, tol: float) -> bool:
    exact = (Fraction, GaussianRational)
    if isinstance(x, exact) and isinstance(y, exact):
        return x == y
    return abs(complex(x) - complex(y)) <= tol * max(1.0, abs(complex(x)), abs(complex(y)))
