"""The monad of a classical datum on the projective plane.

For (A, B, I, J) with n = dim V and r = dim W the monad is

    O(-1) (x) V --alpha--> O (x) (V + V + W) --beta--> O(1) (x) V,

    alpha(x, y, z) = (zA + x, zB + y, zJ)^T,   beta(x, y, z) = (-zB - y, zA + x, zI).

Both maps are stored as coefficient blocks of x, y and z.  ``beta alpha`` has
z^2 coefficient [A, B] + IJ and all other coefficients vanish identically.
In the chart z = 1, beta drops rank at (x, y) = (-a, -b) for a joint left
eigenvalue pair (a, b) of (A, B) killing im I, and alpha drops rank at
(-a, -b) for a joint eigenvector in ker J.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .adhm import ClassicalDatum, SymplecticDatum, iota
from .errors import ConditionFailed, ShapeMismatch, ZeroPoint
from .linalg import (DEFAULT_TOL, FieldKind, Subspace, equal, field_of, identity, is_zero, joint_spectrum,
                     krylov_closure, max_abs, multiset_close, nullspace, rank, solve_linear, to_complex, zeros)
from .linalg.scalars import GaussianRational
from .linalg.spectrum import spectrum_key

COEFFICIENT_NAMES = ("x^2", "xy", "xz", "y^2", "yz", "z^2")
LIFT_CONDITIONS = ("G2 = -G1", "F block form", "G-symmetries", "J compatibility")


@dataclass(frozen=True, eq=False)
class MonadMaps:
    """Coefficient blocks (x, y, z) of alpha ((2n+r) x n) and beta (n x (2n+r))."""

    alpha: tuple
    beta: tuple
    n: int
    r: int
    datum: ClassicalDatum = field(repr=False)

    @property
    def field(self) -> FieldKind:
        return field_of(*self.alpha, *self.beta)

    def alpha_at(self, p) -> np.ndarray:
        return _evaluate(self.alpha, p)

    def beta_at(self, p) -> np.ndarray:
        return _evaluate(self.beta, p)


@dataclass(frozen=True, eq=False)
class ComplexCheck:
    ok: bool
    coefficients: dict
    defect: np.ndarray

    def failing(self) -> list[str]:
        return [name for name in COEFFICIENT_NAMES if not _zero(self.coefficients[name])]


@dataclass(frozen=True)
class FiberReport:
    point: tuple
    rank_alpha: int
    rank_beta: int
    fiber_dim: int
    r: int

    @property
    def excess(self) -> int:
        return self.fiber_dim - self.r

    def as_dict(self) -> dict:
        from .io import scalar_to_json

        return {"point": [scalar_to_json(c) for c in self.point], "rank_alpha": self.rank_alpha,
                "rank_beta": self.rank_beta, "fiber_dim": self.fiber_dim, "excess": self.excess}


@dataclass(frozen=True, eq=False)
class LiftCheck:
    name: str
    ok: bool
    residual_norm: float


@dataclass(frozen=True, eq=False)
class SymplecticLift:
    """The morphism of monads (G1, F, G2) lifting the symplectic form."""

    G1: np.ndarray
    F: np.ndarray
    G2: np.ndarray
    conditions: tuple
    squares: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions) and all(s.ok for s in self.squares)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.conditions + self.squares if not c.ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok,
                "conditions": [{"name": c.name, "ok": c.ok, "residual_norm": c.residual_norm}
                               for c in self.conditions],
                "squares": [{"name": s.name, "ok": s.ok, "residual_norm": s.residual_norm}
                            for s in self.squares]}


def _zero(m, tol: float = DEFAULT_TOL) -> bool:
    return is_zero(m, tol)


def _evaluate(blocks, p) -> np.ndarray:
    x, y, z = p
    bx, by, bz = blocks
    if field_of(bx).exact and all(isinstance(c, (Fraction, GaussianRational)) for c in p):
        return x * bx + y * by + z * bz
    return complex(x) * to_complex(bx) + complex(y) * to_complex(by) + complex(z) * to_complex(bz)


def build_monad(d) -> MonadMaps:
    """Coefficient blocks of alpha and beta for a classical (or symplectic, via iota) datum."""
    if isinstance(d, SymplecticDatum):
        d = iota(d)
    n, r = d.n, d.r
    kind = d.field
    one = identity(n, kind)
    z_nn = zeros(n, n, kind)
    z_rn = zeros(r, n, kind)
    z_nr = zeros(n, r, kind)
    alpha = (np.concatenate([one, z_nn, z_rn]),
             np.concatenate([z_nn, one, z_rn]),
             np.concatenate([d.A, d.B, d.J]))
    beta = (np.concatenate([z_nn, one, z_nr], axis=1),
            np.concatenate([-one, z_nn, z_nr], axis=1),
            np.concatenate([-d.B, d.A, d.I], axis=1))
    return MonadMaps(alpha, beta, n, r, d)


def composition_coefficients(m: MonadMaps) -> dict[str, np.ndarray]:
    """The six coefficient matrices of beta(x,y,z) alpha(x,y,z)."""
    (ax, ay, az), (bx, by, bz) = m.alpha, m.beta
    return {"x^2": bx @ ax, "xy": bx @ ay + by @ ax, "xz": bx @ az + bz @ ax,
            "y^2": by @ ay, "yz": by @ az + bz @ ay, "z^2": bz @ az}


def check_complex(m: MonadMaps, tol: float | None = None) -> ComplexCheck:
    """beta alpha = 0 coefficientwise; the z^2 coefficient carries the defect [A, B] + IJ."""
    tol = m.datum.tol if tol is None else tol
    coeffs = composition_coefficients(m)
    scale = max(1.0, *(max_abs(b) for b in m.alpha + m.beta)) ** 2
    ok = all(is_zero(c, tol, scale) for c in coeffs.values())
    return ComplexCheck(ok, coeffs, coeffs["z^2"])


def normalize_point(p) -> tuple:
    """Scale a homogeneous triple so its last nonzero coordinate is 1."""
    if len(p) != 3:
        raise ShapeMismatch(f"a point of the projective plane has 3 coordinates, got {len(p)}")
    coords = [c if isinstance(c, (Fraction, GaussianRational, complex, float)) else Fraction(c) for c in p]
    coords = [Fraction(c) if isinstance(c, float) and c.is_integer() else c for c in coords]
    for c in reversed(coords):
        if c != 0:
            return tuple(x / c for x in coords)
    raise ZeroPoint("(0, 0, 0) is not a point of the projective plane")


def fiber(m: MonadMaps, p, tol: float | None = None) -> FiberReport:
    """Ranks of alpha(p), beta(p) and the dimension of the middle cohomology fiber."""
    tol = m.datum.tol if tol is None else tol
    p = normalize_point(p)
    a, b = m.alpha_at(p), m.beta_at(p)
    ra, rb = rank(a, tol), rank(b, tol)
    return FiberReport(p, ra, rb, 2 * m.n + m.r - ra - rb, m.r)


def _restricted_spectrum(A, B, seed, tol: float) -> list[tuple]:
    """Joint spectrum of (A^T, B^T) on the annihilator of the (A, B)-closure of im(seed)."""
    n = A.shape[0]
    closure = krylov_closure(Subspace.span(seed, n, tol), [A, B], tol)
    if closure.is_full():
        return []
    Q = nullspace(closure.basis.T, tol) if closure.dim else identity(n, field_of(A))
    At = solve_linear(Q, A.T @ Q, tol)
    Bt = solve_linear(Q, B.T @ Q, tol)
    return joint_spectrum(At, Bt, tol)


def jump_candidates(m: MonadMaps, tol: float | None = None) -> list[tuple]:
    """Points of the chart z = 1 where alpha or beta can drop rank.

    beta(x, y, 1) fails to be onto exactly at (-a, -b) for the joint spectrum of
    (A, B) acting on V / (A, B-closure of im I); alpha(x, y, 1) fails to be
    injective exactly at (-a, -b) for the joint spectrum on the largest
    (A, B)-invariant subspace of ker J.  The returned set is therefore complete.
    """
    d = m.datum
    tol = d.tol if tol is None else tol
    pairs = _restricted_spectrum(d.A, d.B, d.I, tol)
    pairs += _restricted_spectrum(d.A.T, d.B.T, d.J.T, tol)
    one = Fraction(1) if d.field.exact else 1.0
    points = []
    for a, b in sorted(pairs, key=spectrum_key):
        pt = (-a, -b, one)
        if not any(multiset_close([pt[:2]], [q[:2]], tol ** 0.5) for q in points):
            points.append(pt)
    return points


def scan_singular(m: MonadMaps, candidates=None, grid=(), tol: float | None = None) -> list[FiberReport]:
    """Fibers with excess dimension among the candidate points and a grid of the chart z = 1.

    With ``candidates=None`` the complete candidate set of :func:`jump_candidates` is used.
    """
    points = list(jump_candidates(m, tol) if candidates is None else candidates)
    one = Fraction(1) if m.field.exact else 1.0
    points += [(x, y, one) for x, y in grid]
    out = []
    for p in points:
        rep = fiber(m, p, tol)
        if rep.fiber_dim > m.r:
            out.append(rep)
    return out


def _residual_check(name: str, res, tol: float, scale: float) -> LiftCheck:
    return LiftCheck(name, is_zero(res, tol, scale), max_abs(res))


def lift_matrices(d: SymplecticDatum) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """G1 = -G, F = [[0, G, 0], [-G, 0, 0], [0, 0, Omega]], G2 = G."""
    n, r = d.n, d.r
    kind = d.field
    G = d.G
    F = zeros(2 * n + r, 2 * n + r, kind)
    F[:n, n:2 * n] = G
    F[n:2 * n, :n] = -G
    F[2 * n:, 2 * n:] = d.omega.matrix
    return -G, F, np.array(G, copy=True)


def check_lift(d: SymplecticDatum, classical: ClassicalDatum | None = None, G1=None, F=None, G2=None,
               tol: float | None = None) -> SymplecticLift:
    """Certify that (G1, F, G2) is a morphism from the monad to its dual.

    The two squares F alpha = beta^T G1 and G2 beta = alpha^T F are checked
    coefficientwise in (x, y, z); the four defining conditions are reported
    individually.  Raises ConditionFailed naming every failing item.
    """
    tol = d.tol if tol is None else tol
    c = iota(d) if classical is None else classical
    if (c.n, c.r) != (d.n, d.r):
        raise ShapeMismatch("classical datum has different dimensions")
    dG1, dF, dG2 = lift_matrices(d)
    G1 = dG1 if G1 is None else np.asarray(G1)
    F = dF if F is None else np.asarray(F)
    G2 = dG2 if G2 is None else np.asarray(G2)
    n = d.n
    A, B, I, J = c.A, c.B, c.I, c.J
    scale = max(1.0, max_abs(A), max_abs(B), max_abs(I), max_abs(J), max_abs(F)) ** 3

    form = zeros(*F.shape, field_of(F, G2))
    form[:n, n:2 * n] = G2
    form[n:2 * n, :n] = -G2
    form[2 * n:, 2 * n:] = d.omega.matrix
    K = d.omega.inverse
    conditions = (
        _residual_check("G2 = -G1", G2 + G1, tol, scale),
        _residual_check("F block form", F - form, tol, scale),
        _residual_check("G-symmetries", np.concatenate([G2 @ A - A.T @ G2, G2 @ B - B.T @ G2]), tol, scale),
        _residual_check("J compatibility", J + K @ I.T @ G2, tol, scale),
    )
    m = build_monad(c)
    squares = []
    for var, ab, bb in zip("xyz", m.alpha, m.beta):
        squares.append(_residual_check(f"left square [{var}]", F @ ab - bb.T @ G1, tol, scale))
    for var, ab, bb in zip("xyz", m.alpha, m.beta):
        squares.append(_residual_check(f"right square [{var}]", G2 @ bb - ab.T @ F, tol, scale))
    lift = SymplecticLift(G1, F, G2, conditions, tuple(squares))
    if not lift.ok:
        raise ConditionFailed(lift.failures, lift)
    return lift


__all__ = ["COEFFICIENT_NAMES", "ComplexCheck", "FiberReport", "LIFT_CONDITIONS", "LiftCheck", "MonadMaps",
           "SymplecticLift", "build_monad", "check_complex", "check_lift", "composition_coefficients", "fiber",
           "jump_candidates", "lift_matrices", "normalize_point", "scan_singular"]
