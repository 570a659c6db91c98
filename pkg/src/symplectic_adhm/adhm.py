"""Classical and symplectic ADHM data, their equations, stability and gauge action.

Sign convention: a symplectic datum ``(A, B, I, G)`` satisfies

    G = G^T,  GA = A^T G,  GB = B^T G,  [A, B] - I K I^T G = 0,   K = Omega^-1,

and ``iota`` sends it to the classical datum with ``J = -K I^T G``, which then
satisfies ``[A, B] + I J = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (EquationViolated, NoSolution, NotEquivalent, ShapeMismatch, SingularGauge)
from .linalg import (DEFAULT_TOL, FieldKind, Subspace, as_matrix, commutator, convert, equal, field_of,
                     identity, inverse, is_zero, krylov_closure, max_abs, nullspace, rank, solve_linear,
                     zeros)
from .linalg.matrices import kron

EQUATION_NAMES = ("G-symmetric", "GA-symmetry", "GB-symmetry", "ADHM")


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """A nondegenerate antisymmetric form on W = K^r."""

    r: int
    matrix: np.ndarray
    standard: bool = False

    @classmethod
    def darboux(cls, r: int, kind: FieldKind = FieldKind.RATIONAL) -> "SymplecticForm":
        if r < 0 or r % 2:
            raise ShapeMismatch(f"the framing rank r must be even, got {r}")
        h = r // 2
        m = zeros(r, r, kind)
        one = identity(h, kind)
        m[:h, h:] = one
        m[h:, :h] = -one
        return cls(r, m, True)

    @classmethod
    def from_matrix(cls, m, kind: FieldKind | None = None, tol: float = DEFAULT_TOL) -> "SymplecticForm":
        m = as_matrix(m, kind)
        r = m.shape[0]
        if m.shape != (r, r) or r % 2:
            raise ShapeMismatch(f"omega must be square of even size, got {m.shape}")
        if not equal(m.T, -m, tol):
            raise ShapeMismatch("omega is not antisymmetric")
        if rank(m, tol) < r:
            raise ShapeMismatch("omega is degenerate")
        std = cls.darboux(r, field_of(m))
        return cls(r, m, equal(m, std.matrix, tol))

    @property
    def inverse(self) -> np.ndarray:
        if self.standard:
            return -self.matrix
        return inverse(self.matrix)

    def to_field(self, kind: FieldKind) -> "SymplecticForm":
        return SymplecticForm(self.r, convert(self.matrix, kind), self.standard)


@dataclass(frozen=True)
class EquationCheck:
    name: str
    ok: bool
    residual_norm: float
    residual: np.ndarray = field(repr=False, compare=False)


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[EquationCheck]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"valid": self.ok,
                "equations": [{"name": c.name, "ok": c.ok, "residual_norm": c.residual_norm}
                              for c in self.checks]}


def _shape_check(A, B, I, n: int, r: int):
    for name, m, shape in (("A", A, (n, n)), ("B", B, (n, n)), ("I", I, (n, r))):
        if m.shape != shape:
            raise ShapeMismatch(f"{name} has shape {m.shape}, expected {shape}")


def equation_residuals(A, B, I, G, omega: SymplecticForm) -> dict[str, np.ndarray]:
    K = omega.inverse
    return {
        "G-symmetric": G - G.T,
        "GA-symmetry": G @ A - A.T @ G,
        "GB-symmetry": G @ B - B.T @ G,
        "ADHM": commutator(A, B) - I @ K @ I.T @ G,
    }


def _scale(A, B, I, G) -> float:
    s = max(1.0, max_abs(A), max_abs(B), max_abs(I), max_abs(G))
    return s ** 3


def check_equations(A, B, I, G, omega: SymplecticForm, tol: float = DEFAULT_TOL) -> ValidationReport:
    scale = _scale(A, B, I, G)
    checks = []
    for name, res in equation_residuals(A, B, I, G, omega).items():
        ok = is_zero(res, tol, scale)
        checks.append(EquationCheck(name, ok, max_abs(res), res))
    return ValidationReport(tuple(checks))


@dataclass(frozen=True, eq=False)
class SymplecticDatum:
    """A quadruple (A, B, I, G) satisfying the symplectic ADHM equations."""

    A: np.ndarray
    B: np.ndarray
    I: np.ndarray
    G: np.ndarray
    omega: SymplecticForm
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        n = self.A.shape[0] if self.A.ndim == 2 else -1
        _shape_check(self.A, self.B, self.I, n, self.omega.r)
        if self.G.shape != (n, n):
            raise ShapeMismatch(f"G has shape {self.G.shape}, expected {(n, n)}")
        report = check_equations(self.A, self.B, self.I, self.G, self.omega, self.tol)
        if not report.ok:
            raise EquationViolated(report)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def r(self) -> int:
        return self.omega.r

    @property
    def field(self) -> FieldKind:
        return field_of(self.A, self.B, self.I, self.G)

    def matrices(self) -> tuple:
        return self.A, self.B, self.I, self.G

    def to_field(self, kind: FieldKind) -> "SymplecticDatum":
        return SymplecticDatum(convert(self.A, kind), convert(self.B, kind), convert(self.I, kind),
                               convert(self.G, kind), self.omega.to_field(kind), self.tol)

    def same_as(self, other: "SymplecticDatum", tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return all(equal(x, y, tol) for x, y in zip(self.matrices(), other.matrices())) and \
            equal(self.omega.matrix, other.omega.matrix, tol)


@dataclass(frozen=True, eq=False)
class ClassicalDatum:
    """A quadruple (A, B, I, J) with [A, B] + I J = 0 (checked unless ``checked=False``)."""

    A: np.ndarray
    B: np.ndarray
    I: np.ndarray
    J: np.ndarray
    tol: float = DEFAULT_TOL
    checked: bool = True

    def __post_init__(self):
        n = self.A.shape[0]
        r = self.I.shape[1]
        _shape_check(self.A, self.B, self.I, n, r)
        if self.J.shape != (r, n):
            raise ShapeMismatch(f"J has shape {self.J.shape}, expected {(r, n)}")
        if self.checked and not is_zero(self.defect(), self.tol, _scale(self.A, self.B, self.I, self.J)):
            report = ValidationReport((EquationCheck("ADHM", False, max_abs(self.defect()), self.defect()),))
            raise EquationViolated(report)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def r(self) -> int:
        return self.I.shape[1]

    @property
    def field(self) -> FieldKind:
        return field_of(self.A, self.B, self.I, self.J)

    def defect(self) -> np.ndarray:
        return commutator(self.A, self.B) + self.I @ self.J

    def dual(self) -> "ClassicalDatum":
        return ClassicalDatum(self.A.T, self.B.T, self.J.T, self.I.T, self.tol, checked=False)


@dataclass(frozen=True, eq=False)
class GaugeElement:
    g: np.ndarray

    def __post_init__(self):
        n = self.g.shape[0]
        if self.g.shape != (n, n) or rank(self.g) < n:
            raise SingularGauge("gauge matrix is not invertible")

    @property
    def inverse(self) -> np.ndarray:
        return inverse(self.g)

    def compose(self, other: "GaugeElement") -> "GaugeElement":
        """The gauge acting as ``self`` after ``other``."""
        return GaugeElement(self.g @ other.g)


def _resolve_omega(omega, r: int, kind: FieldKind, tol: float) -> SymplecticForm:
    if isinstance(omega, SymplecticForm):
        return omega.to_field(kind)
    if omega is None or (isinstance(omega, str) and omega == "standard"):
        return SymplecticForm.darboux(r, kind)
    return SymplecticForm.from_matrix(omega, kind, tol)


def validation_report(A, B, I, G, omega="standard", field: FieldKind | None = None,
                      tol: float = DEFAULT_TOL) -> ValidationReport:
    A, B, I, G, om = _coerce(A, B, I, G, omega, field, tol)
    return check_equations(A, B, I, G, om, tol)


def _coerce(A, B, I, G, omega, kind, tol):
    if kind is None:
        kind = field_of(*(np.asarray(x, dtype=object) for x in (A, B, I, G)))
    A, B, I, G = (as_matrix(x, kind) for x in (A, B, I, G))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"A must be square, got {A.shape}")
    n = A.shape[0]
    if I.size == 0 and I.shape != (n, I.shape[-1]):
        I = I.reshape(n, -1)
    r = I.shape[1]
    om = _resolve_omega(omega, r, kind, tol)
    _shape_check(A, B, I, n, om.r)
    if G.shape != (n, n):
        raise ShapeMismatch(f"G has shape {G.shape}, expected {(n, n)}")
    return A, B, I, G, om


def validate(A, B, I, G, omega="standard", field: FieldKind | None = None,
             tol: float = DEFAULT_TOL) -> SymplecticDatum:
    """Return the datum if all four equations hold, else raise EquationViolated with the report."""
    A, B, I, G, om = _coerce(A, B, I, G, omega, field, tol)
    return SymplecticDatum(A, B, I, G, om, tol)


def iota(d: SymplecticDatum) -> ClassicalDatum:
    J = -d.omega.inverse @ d.I.T @ d.G
    return ClassicalDatum(d.A, d.B, d.I, J, d.tol)


def _classical(d) -> ClassicalDatum:
    return iota(d) if isinstance(d, SymplecticDatum) else d


def stable_closure(d) -> Subspace:
    """Smallest A,B-invariant subspace containing the image of I."""
    tol = d.tol
    return krylov_closure(Subspace.span(d.I, d.n, tol), [d.A, d.B], tol)


def is_stable(d) -> bool:
    return stable_closure(d).is_full()


def is_costable(d) -> bool:
    """No nonzero A,B-invariant subspace inside ker J (checked on the dual datum)."""
    c = _classical(d)
    return is_stable(c.dual())


def act(g, d: SymplecticDatum) -> SymplecticDatum:
    """(gAg^-1, gBg^-1, gI, g^-T G g^-1)."""
    if not isinstance(g, GaugeElement):
        g = GaugeElement(convert(np.asarray(g), d.field) if d.field.exact else np.asarray(g, dtype=complex))
    m = g.g
    if m.shape != (d.n, d.n):
        raise ShapeMismatch(f"gauge has shape {m.shape}, datum has n = {d.n}")
    mi = g.inverse
    return SymplecticDatum(m @ d.A @ mi, m @ d.B @ mi, m @ d.I, mi.T @ d.G @ mi, d.omega, d.tol)


def act_all(gauges: Sequence, d: SymplecticDatum) -> SymplecticDatum:
    for g in gauges:
        d = act(g, d)
    return d


def _intertwiner_system(d1: SymplecticDatum, d2: SymplecticDatum):
    """Linear system in vec(g) for gA1 = A2 g, gB1 = B2 g, g I1 = I2."""
    n = d1.n
    kind = field_of(*d1.matrices(), *d2.matrices())
    one = identity(n, kind)
    rows = [kron(one, d1.A.T) - kron(d2.A, one),
            kron(one, d1.B.T) - kron(d2.B, one),
            kron(one, d1.I.T)]
    rhs = np.concatenate([zeros(2 * n * n, 1, kind), d2.I.reshape(-1, 1)], axis=0)
    return np.concatenate(rows, axis=0), rhs


def orbit_equivalent(d1: SymplecticDatum, d2: SymplecticDatum) -> GaugeElement:
    """A gauge g with act(g, d1) = d2, or NotEquivalent."""
    if (d1.n, d1.r) != (d2.n, d2.r):
        raise NotEquivalent("data have different dimensions")
    tol = max(d1.tol, d2.tol)
    if rank(d1.G, tol) != rank(d2.G, tol):
        raise NotEquivalent("rank of G differs")
    op, rhs = _intertwiner_system(d1, d2)
    try:
        x = solve_linear(op, rhs, tol)
    except NoSolution:
        raise NotEquivalent("no intertwiner of (A, B, I)") from None
    g = x.reshape(d1.n, d1.n)
    if rank(g, tol) < d1.n:
        raise NotEquivalent("intertwiner is not invertible")
    if not equal(g.T @ d2.G @ g, d1.G, max(tol, 1e-8) if not d1.field.exact else tol):
        raise NotEquivalent("G does not transform correctly")
    return GaugeElement(g)


def stabilizer_dim(d: SymplecticDatum) -> int:
    """Dimension of {x : [x, A] = [x, B] = 0, x I = 0}; zero on the stable locus."""
    op, _ = _intertwiner_system(d, d)
    return d.n * d.n - rank(op, d.tol)


def iota_fiber_dim(d: SymplecticDatum) -> int:
    """Dimension of {H symmetric : HA = A^T H, HB = B^T H, I^T H = 0}.

    The solution set of the inhomogeneous system with I^T G' = I^T G is G plus
    this space, so dimension zero means G is determined by (A, B, I).
    """
    n, r = d.n, d.r
    kind = d.field
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    cols = []
    for i, j in pairs:
        H = zeros(n, n, kind)
        H[i, j] = H[i, j] + 1
        if i != j:
            H[j, i] = H[j, i] + 1
        cols.append(np.concatenate([(H @ d.A - d.A.T @ H).reshape(-1), (H @ d.B - d.B.T @ H).reshape(-1),
                                    (d.I.T @ H).reshape(-1)]))
    if not cols:
        return 0
    M = np.stack(cols, axis=1)
    return len(pairs) - rank(M, d.tol)


def is_nonderogatory_pair(d) -> bool:
    """True when A or B is nonderogatory."""
    from .linalg import is_nonderogatory

    return is_nonderogatory(d.A, d.tol) or is_nonderogatory(d.B, d.tol)


def stratum(d: SymplecticDatum) -> tuple[int, int]:
    k = rank(d.G, d.tol)
    return k, d.n - k


def random_gauge(n: int, rng: np.random.Generator, kind: FieldKind = FieldKind.RATIONAL,
                 bound: int = 2) -> GaugeElement:
    """A random unimodular integer gauge (product of a lower and an upper unitriangular matrix)."""
    if not kind.exact:
        while True:
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            if np.linalg.cond(g) < 1e3:
                return GaugeElement(g)
    L = identity(n, kind)
    U = identity(n, kind)
    for i in range(n):
        for j in range(n):
            if i > j:
                L[i, j] = L[i, j] + int(rng.integers(-bound, bound + 1))
            elif i < j:
                U[i, j] = U[i, j] + int(rng.integers(-bound, bound + 1))
    perm = rng.permutation(n)
    P = identity(n, kind)[perm]
    return GaugeElement(P @ L @ U)


from .sampling import random_datum  # noqa: E402  (re-exported; sampling imports this module)

__all__ = [
    "ClassicalDatum", "EquationCheck", "GaugeElement", "SymplecticDatum", "SymplecticForm",
    "ValidationReport", "act", "act_all", "check_equations", "equation_residuals", "iota",
    "iota_fiber_dim", "is_costable", "is_nonderogatory_pair", "is_stable", "orbit_equivalent", "random_datum", "random_gauge",
    "stabilizer_dim", "stable_closure", "stratum", "validate", "validation_report",
]
