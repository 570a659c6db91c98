"""Projection of symplectic data to the Uhlenbeck space.

After congruence-normalizing G to diag(D, 0) a valid datum has the block form

    A = [[A', 0], [a, alpha]],  B = [[B', 0], [b, beta]],  I = [[I'], [X]],

with (A', B', I', D) a valid datum with invertible G (the double dual) and
[alpha, beta] = 0.  The residual cycle is the set of points of the chart
z = 1 where the monad fiber jumps, namely the negated joint spectrum of
(alpha, beta).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .adhm import (EquationCheck, GaugeElement, SymplecticDatum, SymplecticForm, ValidationReport, act,
                   is_stable, stratum)
from .errors import EquationViolated, NormalFormFailed, NotStable, PipelineError, ShapeMismatch
from .linalg import (DEFAULT_TOL, FieldKind, as_matrix, diag, field_of, identity, is_symmetric, is_zero,
                     joint_spectrum, max_abs, rank, symmetric_congruence)
from .linalg.spectrum import spectrum_key


@dataclass(frozen=True, eq=False)
class UhlenbeckPoint:
    """A datum with invertible G of charge k and a multiset of n - k points of the plane."""

    regular: SymplecticDatum
    cycle: list
    gauge: GaugeElement = field(repr=False)
    weighted: bool = False

    @property
    def charge(self) -> int:
        return self.regular.n

    @property
    def n(self) -> int:
        return self.charge + len(self.cycle)

    def as_dict(self) -> dict:
        from .io import datum_to_dict, scalar_to_json

        return {"charge": self.charge, "n": self.n, "weighted": self.weighted,
                "regular": datum_to_dict(self.regular),
                "cycle": [[scalar_to_json(x), scalar_to_json(y)] for x, y in self.cycle]}


@dataclass(frozen=True, eq=False)
class XDatum:
    """Symmetric A, B and I with [A, B] + I Omega I^T = 0."""

    A: np.ndarray
    B: np.ndarray
    I: np.ndarray
    omega: SymplecticForm
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.B.shape != (n, n) or self.I.shape != (n, self.omega.r):
            raise ShapeMismatch("XDatum needs square A, B of equal size and I of shape n x r")
        if not (is_symmetric(self.A, self.tol) and is_symmetric(self.B, self.tol)):
            raise ShapeMismatch("A and B must be symmetric")
        res = self.A @ self.B - self.B @ self.A + self.I @ self.omega.matrix @ self.I.T
        if not is_zero(res, self.tol, max(1.0, max_abs(self.A), max_abs(self.B), max_abs(self.I)) ** 2):
            raise EquationViolated(ValidationReport((EquationCheck("ADHM", False, max_abs(res), res),)))

    @classmethod
    def from_lists(cls, A, B, I, kind: FieldKind | None = None, tol: float = DEFAULT_TOL) -> "XDatum":
        A, B, I = (as_matrix(x, kind) for x in (A, B, I))
        kind = field_of(A, B, I)
        return cls(A, B, I, SymplecticForm.darboux(I.shape[1], kind), tol)


def _normalized(d: SymplecticDatum):
    try:
        cong = symmetric_congruence(d.G, d.tol)
    except Exception as exc:  # pragma: no cover - G is symmetric for valid data
        raise NormalFormFailed(str(exc)) from exc
    g = GaugeElement(cong.g)
    return g, act(g, d), cong


def extract_double_dual(d: SymplecticDatum) -> tuple[SymplecticDatum, GaugeElement, bool]:
    """The upper-left k x k blocks after normalizing G; returns (datum, gauge, weighted)."""
    if not is_stable(d):
        raise NotStable("double-dual extraction needs a stable datum")
    g, d1, cong = _normalized(d)
    k = cong.k
    kind = d.field
    D = diag(list(cong.weights), kind) if k else identity(0, kind)
    reg = SymplecticDatum(d1.A[:k, :k], d1.B[:k, :k], d1.I[:k, :], D, d.omega, d.tol)
    if not is_stable(reg):
        raise PipelineError("extracted double dual is not stable")
    return reg, g, cong.weighted


def residual_blocks(d: SymplecticDatum) -> tuple[np.ndarray, np.ndarray]:
    """The commuting lower-right blocks (alpha, beta) after normalizing G."""
    _, d1, cong = _normalized(d)
    k = cong.k
    return d1.A[k:, k:], d1.B[k:, k:]


def project(d: SymplecticDatum) -> UhlenbeckPoint:
    """The Uhlenbeck point (double dual, residual cycle) of a stable datum."""
    reg, g, weighted = extract_double_dual(d)
    d1 = act(g, d)
    k = reg.n
    pairs = joint_spectrum(d1.A[k:, k:], d1.B[k:, k:], d.tol)
    cycle = sorted(((-a, -b) for a, b in pairs), key=spectrum_key)
    if k + len(cycle) != d.n or k != rank(d.G, d.tol):
        raise PipelineError("charge is not conserved")
    return UhlenbeckPoint(reg, cycle, g, weighted)


def embed_tau(x: XDatum) -> SymplecticDatum:
    """(A, B, I) -> (A, B, I, 1); raises EquationViolated if the result is invalid."""
    n = x.A.shape[0]
    return SymplecticDatum(x.A, x.B, x.I, identity(n, field_of(x.A, x.B, x.I)), x.omega, x.tol)


__all__ = ["UhlenbeckPoint", "XDatum", "embed_tau", "extract_double_dual", "project", "residual_blocks",
           "stratum"]
