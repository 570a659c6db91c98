from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import Q
from symplectic_adhm import fixture_path
from symplectic_adhm.adhm import ClassicalDatum, act, iota, random_datum, random_gauge, validate
from symplectic_adhm.errors import ConditionFailed, ZeroPoint
from symplectic_adhm.io import load_datum
from symplectic_adhm.linalg import equal, identity, is_zero, rank, zeros
from symplectic_adhm.monad import (COEFFICIENT_NAMES, LIFT_CONDITIONS, build_monad, check_complex, check_lift,
                                   fiber, jump_candidates, lift_matrices, normalize_point, scan_singular)
from symplectic_adhm.uhlenbeck import project


@st.composite
def data(draw, max_n=4):
    r = draw(st.sampled_from([2, 4, 6]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_datum(r, n, k, np.random.default_rng(seed), mix=draw(st.booleans()),
                        gauge=draw(st.booleans()))


def zero_classical(n, r):
    return ClassicalDatum(zeros(n, n), zeros(n, n), zeros(n, r), zeros(r, n))


def isotropic():
    return load_datum(fixture_path("n2_r4_isotropic.json"))


class TestBuild:
    def test_zero_datum(self):
        m = build_monad(ClassicalDatum(zeros(1, 1), zeros(1, 1), zeros(1, 2), zeros(2, 1)))
        x, y, z = Fraction(2), Fraction(3), Fraction(5)
        assert equal(m.alpha_at((x, y, z)), Q([[x], [y], [0], [0]]))
        assert equal(m.beta_at((x, y, z)), Q([[-y, x, 0, 0]]))

    def test_z_coefficient_of_alpha(self):
        c = iota(random_datum(4, 3, 2, 1))
        m = build_monad(c)
        assert equal(m.alpha[2], np.concatenate([c.A, c.B, c.J]))

    def test_x_coefficient_of_beta(self):
        m = build_monad(zero_classical(2, 2))
        assert equal(m.beta[0], np.concatenate([zeros(2, 2), identity(2), zeros(2, 2)], axis=1))


class TestComplex:
    def test_valid_datum(self):
        chk = check_complex(build_monad(random_datum(4, 3, 1, 2)))
        assert chk.ok and chk.failing() == []
        assert set(chk.coefficients) == set(COEFFICIENT_NAMES)

    def test_defect_sits_in_z_squared(self):
        c = iota(random_datum(4, 2, 2, 3))
        J = c.J.copy()
        J[0, 0] += 1
        bad = ClassicalDatum(c.A, c.B, c.I, J, checked=False)
        chk = check_complex(build_monad(bad))
        assert not chk.ok and chk.failing() == ["z^2"]
        assert equal(chk.coefficients["z^2"], bad.defect())

    @given(st.data())
    def test_xy_coefficient_vanishes_for_any_entries(self, draw):
        n, r = draw.draw(st.integers(1, 3)), 2
        ints = st.integers(-3, 3)
        mats = [Q([[draw.draw(ints) for _ in range(cols)] for _ in range(rows)])
                for rows, cols in ((n, n), (n, n), (n, r), (r, n))]
        chk = check_complex(build_monad(ClassicalDatum(*mats, checked=False)))
        for name in ("x^2", "xy", "y^2", "xz", "yz"):
            assert is_zero(chk.coefficients[name])

    @given(data())
    def test_iota_gives_a_complex(self, d):
        assert check_complex(build_monad(iota(d))).ok


class TestFiber:
    def test_zero_point(self):
        with pytest.raises(ZeroPoint):
            fiber(build_monad(isotropic()), (0, 0, 0))

    def test_normalization(self):
        assert normalize_point((2, 4, 2)) == (1, 2, 1)
        assert normalize_point((3, 6, 0)) == (Fraction(1, 2), 1, 0)

    def test_singular_origin(self):
        rep = fiber(build_monad(isotropic()), (0, 0, 1))
        assert (rep.rank_alpha, rep.rank_beta, rep.fiber_dim) == (0, 2, 4 + 2)

    def test_costable_fibers(self):
        d = random_datum(4, 3, 3, 8)
        m = build_monad(d)
        rng = np.random.default_rng(0)
        for _ in range(10):
            p = tuple(Fraction(int(x)) for x in rng.integers(-5, 6, size=3))
            if any(p):
                assert fiber(m, p).fiber_dim == d.r

    @given(data(), st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=5))
    def test_framing_line(self, d, points):
        m = build_monad(d)
        for x, y in points:
            if x or y:
                rep = fiber(m, (x, y, 0))
                assert rep.fiber_dim == d.r and rep.rank_beta == d.n

    @given(data(max_n=3), st.integers(0, 2 ** 32 - 1))
    def test_gauge_invariance(self, d, seed):
        e = act(random_gauge(d.n, np.random.default_rng(seed), bound=1), d)
        m1, m2 = build_monad(d), build_monad(e)
        for p in [(0, 0, 1), (1, -1, 1), (2, 0, 1)] + jump_candidates(m1):
            assert fiber(m1, p).fiber_dim == fiber(m2, p).fiber_dim


class TestScan:
    def test_costable_is_empty(self):
        m = build_monad(random_datum(4, 3, 3, 5))
        assert scan_singular(m) == []
        assert scan_singular(m, grid=[(0, 0), (1, 2)]) == []

    def test_isotropic_origin_only(self):
        found = scan_singular(build_monad(isotropic()), grid=[(1, 0), (0, 1)])
        assert [rep.point for rep in found] == [(0, 0, 1)]

    def test_corank_one_single_jump(self):
        d = load_datum(fixture_path("n2_r4_corank_one.json"))
        found = scan_singular(build_monad(d))
        assert len(found) == 1 and found[0].fiber_dim == d.r + 1

    @given(data())
    def test_total_excess_is_corank(self, d):
        found = scan_singular(build_monad(d))
        assert sum(rep.excess for rep in found) == d.n - rank(d.G)

    @given(data())
    def test_full_rank_away_from_jumps(self, d):
        m = build_monad(d)
        jumps = {rep.point for rep in scan_singular(m)}
        for p in [(Fraction(7, 3), Fraction(-5, 2), Fraction(1)), (Fraction(1), Fraction(11), Fraction(1))]:
            if p not in jumps:
                rep = fiber(m, p)
                assert rep.rank_alpha == d.n and rep.rank_beta == d.n

    @given(data())
    def test_matches_projection(self, d):
        cycle = project(d).cycle
        found = scan_singular(build_monad(d))
        assert {rep.point[:2] for rep in found} == {tuple(p) for p in cycle}


class TestLift:
    def test_valid_datum(self):
        lift = check_lift(random_datum(4, 3, 2, 1))
        assert lift.ok and [c.name for c in lift.conditions] == list(LIFT_CONDITIONS)

    def test_antisymmetric_f(self):
        _, F, _ = lift_matrices(random_datum(4, 3, 2, 2))
        assert equal(F.T, -F)

    def test_tampered_j(self):
        d = random_datum(4, 2, 2, 3)
        c = iota(d)
        J = c.J.copy()
        J[1, 0] += 1
        with pytest.raises(ConditionFailed) as exc:
            check_lift(d, classical=ClassicalDatum(c.A, c.B, c.I, J, checked=False))
        assert "J compatibility" in exc.value.failures
        assert not any(name in exc.value.failures for name in LIFT_CONDITIONS[:3])

    def test_wrong_sign(self):
        d = random_datum(2, 2, 2, 4)
        G1, F, G2 = lift_matrices(d)
        with pytest.raises(ConditionFailed) as exc:
            check_lift(d, G1=-G1)
        assert "G2 = -G1" in exc.value.failures

    def test_degenerate_form(self):
        d = isotropic()
        lift = check_lift(d)
        n = d.n
        assert lift.ok and is_zero(lift.F[:2 * n, :2 * n]) and equal(lift.F[2 * n:, 2 * n:], d.omega.matrix)

    @given(data())
    def test_random_data(self, d):
        assert check_lift(d).ok


def test_float_datum():
    d = validate(np.zeros((2, 2)), np.zeros((2, 2)), np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0]]), np.zeros((2, 2)))
    m = build_monad(d)
    assert check_complex(m).ok
    assert fiber(m, (0.0, 0.0, 1.0)).fiber_dim == 6
