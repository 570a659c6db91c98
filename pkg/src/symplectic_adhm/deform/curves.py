"""Polynomial curves of symplectic data whose generic member has invertible G.

Construction used for every input with rank(G) = k < n:

1. Congruence-normalize G to diag(D, 0).  The data take the block form
   A = [[A', 0], [a, alpha]], B = [[B', 0], [b, beta]], I = [[I'], [X]].
2. Replace (A, B) by an SL(2) combination (A, B - nu A) or (B, -A) so that the
   new lower-right block of B is nonderogatory and the Sylvester equation
   w B' - beta w = -b is solvable.  Both moves preserve all four equations.
3. Gauge by [[1, 0], [w, 1]], which keeps G and kills b.
4. Take a symmetric invertible E with E beta = beta^T E and a matrix psi with
   E psi symmetric and [psi, beta] = X K X^T E.  Then

       A(t) = [[A', t D^-1 a^T E], [a, alpha + t psi]],  B(t) = diag(B', beta),
       I(t) = I,  G(t) = diag(D, t E)

   satisfies the equations identically in t, and det G(t) = c t^(n-k).
5. Undo the SL(2) combination.

When G = 0, I K I^T = 0 and no combination works (e.g. scalar A and B), the
curve (A, B, I, t E) with E symmetric invertible intertwining A and B is used.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..adhm import (GaugeElement, SymplecticDatum, act_all, is_stable)
from ..errors import InputError, NoSolution, NotStable, SearchExhausted, StageFailed
from ..linalg import (DEFAULT_TOL, FieldKind, PolyMat, commutator, equal, field_of, identity, inverse,
                      is_nonderogatory, is_zero, max_abs, poly_block, rank, scalar_poly_det,
                      solve_linear, symmetric_congruence, sylvester_solve, to_complex, zeros)
from ..linalg.matrices import block_diag
from .tools import _combine, _symmetric_basis, invertible_symmetric_intertwiner


class CurveCase(enum.Enum):
    CONSTANT = "CONSTANT"
    G_ZERO = "G_ZERO"
    CORANK_ONE = "CORANK_ONE"
    GENERAL = "GENERAL"


class Certification(enum.Enum):
    EXACT_CERTIFIED = "EXACT_CERTIFIED"
    FLOAT_CERTIFIED = "FLOAT_CERTIFIED"


@dataclass(frozen=True, eq=False)
class DeformationCurve:
    A_t: PolyMat
    B_t: PolyMat
    I_t: PolyMat
    G_t: PolyMat
    gauge_log: list
    case: CurveCase
    rotation: tuple = (1, 0, 0, 1)
    notes: dict = field(default_factory=dict)

    @property
    def field(self) -> FieldKind:
        return self.A_t.field

    def at(self, t, omega, tol: float = DEFAULT_TOL) -> SymplecticDatum:
        return SymplecticDatum(self.A_t.eval(t), self.B_t.eval(t), self.I_t.eval(t), self.G_t.eval(t),
                               omega, tol)


@dataclass(frozen=True)
class ResidualCheck:
    name: str
    ok: bool
    offending_coefficients: tuple
    max_residual: float


@dataclass(frozen=True)
class CurveCertificate:
    residuals: tuple
    t0_matches: bool
    det_coefficients: tuple
    det_order: int | None
    expected_order: int
    stability_samples: tuple
    certification: Certification
    failures: tuple

    @property
    def green(self) -> bool:
        return not self.failures

    @property
    def order_ok(self) -> bool:
        return self.det_order == self.expected_order

    def as_dict(self) -> dict:
        return {
            "green": self.green,
            "certification": self.certification.value,
            "residuals": [{"name": r.name, "ok": r.ok, "offending_coefficients": list(r.offending_coefficients),
                           "max_residual": r.max_residual} for r in self.residuals],
            "t0_matches": self.t0_matches,
            "det_order": self.det_order,
            "expected_order": self.expected_order,
            "stability_samples": [{"t": str(t), "stable": s} for t, s in self.stability_samples],
            "failures": list(self.failures),
        }


def _nu_candidates(count: int = 24):
    yield Fraction(0)
    k = 1
    while count > 0:
        for v in (Fraction(k), Fraction(-k), Fraction(1, k + 1), Fraction(-1, k + 1)):
            yield v
        k += 1
        count -= 4


def _rotations():
    """SL(2) matrices (p, q, r, s) acting as (A, B) -> (pA + qB, rA + sB)."""
    for nu in _nu_candidates():
        yield (1, 0, -nu, 1)
    yield (0, 1, -1, 0)
    for nu in _nu_candidates(8):
        if nu:
            yield (0, 1, -1, -nu)


def _rotate(A, B, rot):
    p, q, r, s = rot
    return p * A + q * B, r * A + s * B


def _constant_curve(d: SymplecticDatum, case: CurveCase = CurveCase.CONSTANT) -> DeformationCurve:
    return DeformationCurve(PolyMat.constant(d.A), PolyMat.constant(d.B), PolyMat.constant(d.I),
                            PolyMat.constant(d.G), [], case)


def _case_for(n: int, k: int) -> CurveCase:
    if k == n:
        return CurveCase.CONSTANT
    if k == 0:
        return CurveCase.G_ZERO
    if k == n - 1:
        return CurveCase.CORANK_ONE
    return CurveCase.GENERAL


def _solve_psi(beta, E, rhs, tol: float):
    """psi with E psi symmetric and [psi, beta] = rhs, via Y = E psi solving Y beta - beta^T Y = E rhs."""
    m = beta.shape[0]
    kind = field_of(beta, E, rhs)
    basis = _symmetric_basis(m, kind)
    op = np.stack([(H @ beta - beta.T @ H).reshape(-1) for H in basis], axis=1)
    target = (E @ rhs).reshape(-1, 1)
    coeffs = solve_linear(op, target, tol)
    Y = _combine(basis, coeffs.reshape(-1))
    return inverse(E) @ Y


def _normalize(d: SymplecticDatum, tol: float):
    try:
        cong = symmetric_congruence(d.G, tol)
    except Exception as exc:  # pragma: no cover - G is symmetric for valid data
        raise StageFailed("normalize", str(exc)) from exc
    g = GaugeElement(cong.g)
    return g, act_all([g], d), cong


def deform_general(d: SymplecticDatum, seed: int = 0, tol: float | None = None) -> DeformationCurve:
    """A polynomial curve of valid data through (a gauge transform of) d with det G(t) of order n - rank G."""
    tol = d.tol if tol is None else tol
    if not is_stable(d):
        raise NotStable("deformation requires a stable datum")
    n = d.n
    k = rank(d.G, tol)
    case = _case_for(n, k)
    if k == n:
        return _constant_curve(d)
    kind = d.field
    exact = kind.exact
    g1, d1, cong = _normalize(d, tol)
    K = d.omega.inverse
    D = block_diag(*[np.array([[w]], dtype=object if exact else complex) for w in cong.weights], kind=kind) \
        if k else zeros(0, 0, kind)
    m = n - k
    A, B, I = d1.A, d1.B, d1.I
    diagnostics = []
    for rot in _rotations():
        Ah, Bh = _rotate(A, B, rot)
        Ap, a, al = Ah[:k, :k], Ah[k:, :k], Ah[k:, k:]
        Bp, b, be = Bh[:k, :k], Bh[k:, :k], Bh[k:, k:]
        if not is_nonderogatory(be, tol):
            diagnostics.append(f"{rot}: lower-right block of B is derogatory")
            continue
        try:
            w = sylvester_solve(Bp, be, -b, tol) if k else zeros(m, 0, kind)
        except NoSolution:
            diagnostics.append(f"{rot}: Sylvester equation for the gauge is unsolvable")
            continue
        gw = identity(n, kind)
        gw[k:, :k] = w
        gauge_w = GaugeElement(gw)
        d2 = act_all([gauge_w], d1)
        Ah, Bh = _rotate(d2.A, d2.B, rot)
        Ap, a, al = Ah[:k, :k], Ah[k:, :k], Ah[k:, k:]
        Bp, b, be = Bh[:k, :k], Bh[k:, :k], Bh[k:, k:]
        X = d2.I[k:, :]
        if not is_zero(b, tol, max(1.0, max_abs(Bh))):
            raise StageFailed("gauge", "lower-left block of B did not vanish after the gauge")
        try:
            E = invertible_symmetric_intertwiner(be, seed=seed, tol=tol)
        except SearchExhausted as exc:
            raise StageFailed("symmetrizer", str(exc)) from exc
        if not equal(E @ al, al.T @ E, tol):
            raise StageFailed("symmetrizer", "alpha is not self-adjoint for the symmetrizer of beta")
        try:
            psi = _solve_psi(be, E, X @ K @ X.T @ E, tol)
        except NoSolution as exc:
            raise StageFailed("bracket", "no E-symmetric solution of [psi, beta] = X K X^T E") from exc
        Dinv = inverse(D) if k else D
        zero_mk = zeros(m, k, kind)
        zero_km = zeros(k, m, kind)
        A_t = poly_block([[PolyMat.constant(Ap), PolyMat([zero_km, Dinv @ a.T @ E], (k, m), kind)],
                          [PolyMat.constant(a), PolyMat([al, psi], (m, m), kind)]])
        B_t = PolyMat.constant(block_diag(Bp, be, kind=kind))
        I_t = PolyMat.constant(d2.I)
        G_t = poly_block([[PolyMat.constant(D), PolyMat.constant(zero_km)],
                          [PolyMat.constant(zero_mk), PolyMat([zeros(m, m, kind), E], (m, m), kind)]])
        p, q, r, s = rot
        A_back = A_t * s + B_t * (-q)
        B_back = A_t * (-r) + B_t * p
        return DeformationCurve(A_back, B_back, I_t, G_t, [g1, gauge_w], case, rot,
                                {"k": k, "weighted": cong.weighted})
    if k == 0 and is_zero(I @ K @ I.T, tol, max(1.0, max_abs(I)) ** 2):
        try:
            E = invertible_symmetric_intertwiner(A, seed=seed, tol=tol, others=(B,))
        except SearchExhausted:
            diagnostics.append("isotropic: no invertible symmetric E intertwining A and B")
        else:
            G_t = PolyMat([zeros(n, n, kind), E], (n, n), kind)
            return DeformationCurve(PolyMat.constant(A), PolyMat.constant(B), PolyMat.constant(I), G_t,
                                    [g1], case, (1, 0, 0, 1), {"k": 0, "weighted": False, "isotropic": True})
    raise StageFailed("rotation", "no SL(2) combination made the residual block nonderogatory "
                      "with a solvable gauge equation; tried " + "; ".join(diagnostics[:6]))


def deform_g_zero(d: SymplecticDatum, seed: int = 0, tol: float | None = None) -> DeformationCurve:
    tol = d.tol if tol is None else tol
    if rank(d.G, tol) != 0:
        raise InputError("deform_g_zero requires G = 0")
    return deform_general(d, seed, tol)


def deform_corank_one(d: SymplecticDatum, seed: int = 0, tol: float | None = None) -> DeformationCurve:
    tol = d.tol if tol is None else tol
    if rank(d.G, tol) != d.n - 1:
        raise InputError("deform_corank_one requires rank G = n - 1")
    return deform_general(d, seed, tol)


def curve_residuals(c: DeformationCurve, omega) -> dict[str, PolyMat]:
    K = omega.inverse if c.field.exact else to_complex(omega.inverse)
    A, B, I, G = c.A_t, c.B_t, c.I_t, c.G_t
    return {
        "G-symmetric": G - G.T,
        "GA-symmetry": G @ A - A.T @ G,
        "GB-symmetry": G @ B - B.T @ G,
        "ADHM": (A @ B - B @ A) - I @ PolyMat.constant(K) @ I.T @ G,
    }


def _det_coefficients(G_t: PolyMat, tol: float) -> list:
    if G_t.field.exact:
        return scalar_poly_det(G_t)
    n = G_t.shape[0]
    deg = max(G_t.degree, 0) * n
    pts = np.exp(2j * np.pi * np.arange(deg + 1) / (deg + 1))
    vals = np.array([np.linalg.det(G_t.eval(t)) if n else 1.0 for t in pts])
    coeffs = np.fft.fft(vals) / (deg + 1)
    return [complex(c) for c in coeffs]


def _sample_points(rng: np.random.Generator, exact: bool, count: int = 3):
    pts = []
    while len(pts) < count:
        num = int(rng.integers(1, 12)) * int(rng.choice([-1, 1]))
        den = int(rng.integers(1, 12))
        t = Fraction(num, den)
        if t not in pts:
            pts.append(t)
    return pts if exact else [float(t) for t in pts]


def validate_curve(c: DeformationCurve, d_input: SymplecticDatum, seed: int = 0,
                   tol: float | None = None) -> CurveCertificate:
    """Certify a curve: identities in t, t = 0 against the gauged input, det order, sampled stability."""
    tol = d_input.tol if tol is None else tol
    exact = c.field.exact and d_input.field.exact
    check_tol = tol if exact else max(tol, 1e-8)
    failures = []
    residuals = []
    scale = max(1.0, c.A_t.max_coefficient(), c.B_t.max_coefficient(), c.I_t.max_coefficient(),
                c.G_t.max_coefficient()) ** 3
    for name, res in curve_residuals(c, d_input.omega).items():
        bad = res.nonzero_coefficients(check_tol * scale)
        residuals.append(ResidualCheck(name, not bad, tuple(bad), res.max_coefficient()))
        if bad:
            failures.append(f"equation {name} fails in the coefficient(s) of t^{bad}")
    try:
        target = act_all(c.gauge_log, d_input)
        t0 = (c.A_t.eval(0), c.B_t.eval(0), c.I_t.eval(0), c.G_t.eval(0))
        t0_ok = all(equal(x, y, check_tol * scale) for x, y in zip(t0, target.matrices()))
    except Exception as exc:  # noqa: BLE001 - reported in the certificate
        t0_ok = False
        failures.append(f"t = 0 comparison raised {type(exc).__name__}: {exc}")
    else:
        if not t0_ok:
            failures.append("curve at t = 0 differs from the gauge-transformed input")
    n = d_input.n
    expected = n - rank(d_input.G, tol)
    det = _det_coefficients(c.G_t, tol)
    if exact:
        order = next((i for i, x in enumerate(det) if x != 0), None)
    else:
        dscale = max([1.0] + [abs(x) for x in det])
        order = next((i for i, x in enumerate(det) if abs(x) > check_tol * dscale), None)
    if order is None:
        failures.append("det G(t) vanishes identically")
    elif order != expected:
        failures.append(f"det G(t) vanishes to order {order}, expected {expected}")
    rng = np.random.default_rng(seed)
    samples = []
    for t in _sample_points(rng, exact):
        try:
            stable = is_stable(c.at(t, d_input.omega, check_tol if exact else 1e-7))
        except Exception:  # noqa: BLE001 - an invalid member is reported as a failure
            stable = False
        samples.append((t, stable))
        if not stable:
            failures.append(f"curve member at t = {t} is not stable")
    cert = Certification.EXACT_CERTIFIED if exact else Certification.FLOAT_CERTIFIED
    return CurveCertificate(tuple(residuals), t0_ok, tuple(det), order, expected, tuple(samples), cert,
                            tuple(failures))
