from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import Q
from symplectic_adhm import fixture_path
from symplectic_adhm.adhm import act, random_datum, random_gauge, validate
from symplectic_adhm.errors import NotStable
from symplectic_adhm.io import load_datum
from symplectic_adhm.linalg import FieldKind, equal, identity, is_nonderogatory, is_zero, rank, zeros
from symplectic_adhm.tangent import (TangentVector, ambient_dim, is_smooth_point, jacobian, linearized_equations,
                                     orbit_map, residual_map, tangent_report)


@st.composite
def data(draw, max_n=4):
    r = draw(st.sampled_from([2, 4, 6]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_datum(r, n, k, np.random.default_rng(seed), mix=draw(st.booleans()),
                        gauge=draw(st.booleans()))


def _sym(m):
    return sympy.Matrix(m.shape[0], m.shape[1], lambda i, j: sympy.Rational(m[i, j].numerator,
                                                                            m[i, j].denominator))


def sympy_jacobian(d):
    """Jacobian of the residual map by symbolic differentiation."""
    n, r = d.n, d.r
    xa = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"a{i}{j}"))
    xb = sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"b{i}{j}"))
    xi = sympy.Matrix(n, r, lambda i, j: sympy.Symbol(f"i{i}{j}"))
    g_syms = {(i, j): sympy.Symbol(f"g{i}{j}") for i in range(n) for j in range(i, n)}
    xg = sympy.Matrix(n, n, lambda i, j: g_syms[(min(i, j), max(i, j))])
    A, B, I, G = (_sym(m) + x for m, x in zip(d.matrices(), (xa, xb, xi, xg)))
    K = _sym(d.omega.inverse)
    e1, e2 = G * A - A.T * G, G * B - B.T * G
    e3 = A * B - B * A - I * K * I.T * G
    up = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = [e1[i, j] for i, j in up] + [e2[i, j] for i, j in up] + list(e3)
    variables = list(xa) + list(xb) + list(xi) + [g_syms[(i, j)] for i, j in zip(*np.triu_indices(n))]
    jac = sympy.Matrix(rows).jacobian(variables).subs({v: 0 for v in variables})
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in jac.tolist()]


def zero_datum(I):
    n = I.shape[0]
    return validate(zeros(n, n), zeros(n, n), I, zeros(n, n))


ISOTROPIC = Q([[1, 0, 0, 0], [0, 1, 0, 0]])
NONISOTROPIC = Q([[1, 0, 0, 0], [0, 0, 1, 0]])


class TestJacobian:
    @pytest.mark.parametrize("shape", [(2, 2, 1), (2, 2, 2), (4, 2, 0), (2, 3, 2)])
    def test_matches_symbolic_derivative(self, shape):
        r, n, k = shape
        d = random_datum(r, n, k, 17, mix=True, gauge=True)
        assert jacobian(d).tolist() == sympy_jacobian(d)

    def test_row_count(self):
        d = random_datum(4, 3, 2, 1)
        assert jacobian(d).shape == (3 + 3 + 9, ambient_dim(3, 4))

    def test_zero_datum_collapses_to_g_condition(self):
        d = zero_datum(NONISOTROPIC)
        J = jacobian(d)
        n, r = 2, 4
        assert is_zero(J[:, :2 * n * n + n * r])
        KIIt = d.I @ d.omega.inverse @ d.I.T
        rng = np.random.default_rng(0)
        for _ in range(5):
            XG = Q(rng.integers(-3, 4, size=(2, 2)).tolist())
            XG = XG + XG.T
            v = TangentVector(zeros(2, 2), zeros(2, 2), zeros(2, 4), XG)
            killed = is_zero(linearized_equations(d, v))
            assert killed == is_zero(KIIt @ XG)

    @pytest.mark.parametrize("r", [2, 4, 6])
    def test_charge_one_is_identically_zero(self, r):
        d = random_datum(r, 1, 1, r)
        assert is_zero(jacobian(d))
        rep = tangent_report(d)
        assert rep.ker_dim == rep.ambient_dim == r + 3

    @given(data(), st.integers(0, 2 ** 32 - 1))
    def test_matrix_agrees_with_direct_evaluation(self, d, seed):
        rng = np.random.default_rng(seed)
        v = Q(rng.integers(-3, 4, size=ambient_dim(d.n, d.r)).tolist())[:, 0]
        tv = TangentVector.unflatten(v, d.n, d.r)
        assert equal(jacobian(d) @ v, linearized_equations(d, tv))

    @given(data())
    def test_residual_vanishes_at_data(self, d):
        assert is_zero(residual_map(*d.matrices(), d.omega.inverse, d.n))

    def test_flatten_roundtrip(self):
        rng = np.random.default_rng(3)
        v = Q(rng.integers(-3, 4, size=ambient_dim(3, 2)).tolist())[:, 0]
        tv = TangentVector.unflatten(v, 3, 2)
        assert equal(tv.X_G, tv.X_G.T)
        assert equal(tv.flatten(), v)


class TestOrbit:
    def test_identity_direction(self):
        d = random_datum(4, 2, 1, 5)
        image = orbit_map(d) @ identity(2).reshape(-1)
        tv = TangentVector.unflatten(image, 2, 4)
        assert is_zero(tv.X_A) and is_zero(tv.X_B)
        assert equal(tv.X_I, d.I) and equal(tv.X_G, -2 * d.G)

    def test_unstable_zero_datum(self):
        d = zero_datum(zeros(2, 4))
        assert rank(orbit_map(d)) < 4

    @given(data())
    def test_free_and_tangent(self, d):
        O = orbit_map(d)
        assert rank(O) == d.n ** 2
        assert is_zero(jacobian(d) @ O)


class TestReport:
    def test_isotropic_is_singular(self):
        rep = tangent_report(zero_datum(ISOTROPIC))
        assert rep.moduli_tangent_dim > 12 and not rep.smooth

    def test_nonisotropic_is_smooth(self):
        rep = tangent_report(zero_datum(NONISOTROPIC))
        assert rep.ker_dim == 2 * 4 + 2 * 4
        assert rep.moduli_tangent_dim == 12 and rep.smooth

    def test_unstable_rejected(self):
        with pytest.raises(NotStable):
            tangent_report(zero_datum(zeros(2, 4)))

    def test_fixture_and_gauge(self):
        d = load_datum(fixture_path("n2_r4_isotropic.json"))
        assert not is_smooth_point(d)
        assert not is_smooth_point(act(random_gauge(2, np.random.default_rng(1)), d))

    @pytest.mark.parametrize("r", [2, 4, 6])
    def test_charge_one_smooth(self, r):
        for k in (0, 1):
            assert is_smooth_point(random_datum(r, 1, k, 10 + r, gauge=True))

    def test_invertible_form_rank(self):
        d = random_datum(4, 3, 3, 2)
        rep = tangent_report(d)
        n, r = 3, 4
        assert rep.jac_rank == rep.ambient_dim - (n * n + r * n + 2 * n)

    def test_float_report_has_margin(self):
        d = random_datum(4, 2, 2, 9, field=FieldKind.COMPLEX)
        rep = tangent_report(d)
        assert rep.smooth and not rep.exact and rep.rank_margin > 0

    @given(data())
    def test_lower_bound(self, d):
        rep = tangent_report(d)
        assert rep.moduli_tangent_dim >= rep.expected_dim
        assert rep.smooth == (rep.moduli_tangent_dim == rep.expected_dim)

    @given(data(max_n=4))
    def test_nonderogatory_implies_smooth(self, d):
        if is_nonderogatory(d.A) or is_nonderogatory(d.B):
            assert is_smooth_point(d)

    @given(data(max_n=3), st.integers(0, 2 ** 32 - 1))
    def test_gauge_invariance(self, d, seed):
        e = act(random_gauge(d.n, np.random.default_rng(seed), bound=1), d)
        assert tangent_report(e).moduli_tangent_dim == tangent_report(d).moduli_tangent_dim
