from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import Q
from symplectic_adhm import fixture_path
from symplectic_adhm.adhm import (act, is_costable, is_stable, orbit_equivalent, random_datum, random_gauge,
                                  stratum, validate)
from symplectic_adhm.errors import EquationViolated, NotStable, ShapeMismatch
from symplectic_adhm.io import load_datum
from symplectic_adhm.linalg import commutator, is_zero, multiset_close, rank, zeros
from symplectic_adhm.uhlenbeck import XDatum, embed_tau, extract_double_dual, project, residual_blocks


@st.composite
def data(draw, max_n=4):
    r = draw(st.sampled_from([2, 4, 6]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_datum(r, n, k, np.random.default_rng(seed), mix=draw(st.booleans()),
                        gauge=draw(st.booleans()))


class TestDoubleDual:
    def test_invertible_form(self):
        d = random_datum(4, 3, 3, 1)
        reg, g, _ = extract_double_dual(d)
        assert reg.n == 3
        orbit_equivalent(reg, d)

    def test_zero_form(self):
        d = random_datum(4, 3, 0, 2)
        reg, _, _ = extract_double_dual(d)
        assert reg.n == 0

    def test_charge_two_of_three(self):
        reg, _, _ = extract_double_dual(random_datum(4, 3, 2, 3, mix=True))
        assert reg.n == 2 and is_stable(reg) and rank(reg.G) == 2 and is_costable(reg)

    def test_unstable(self):
        d = validate(zeros(1, 1), zeros(1, 1), zeros(1, 2), zeros(1, 1))
        with pytest.raises(NotStable):
            extract_double_dual(d)

    @given(data())
    def test_idempotent_up_to_gauge(self, d):
        reg, _, _ = extract_double_dual(d)
        again, _, _ = extract_double_dual(reg)
        orbit_equivalent(again, reg)

    @given(data())
    def test_residual_blocks_commute(self, d):
        a, b = residual_blocks(d)
        assert a.shape == (d.n - rank(d.G),) * 2 and is_zero(commutator(a, b))


class TestProject:
    def test_invertible_form_empty_cycle(self):
        assert project(random_datum(2, 3, 3, 4)).cycle == []

    def test_origin(self):
        p = project(load_datum(fixture_path("n2_r4_isotropic.json")))
        assert p.cycle == [(0, 0), (0, 0)] and p.charge == 0

    def test_corank_one_at_origin(self):
        # lower-left entry of A is 1, lower-right blocks (alpha, beta) are (0, 0)
        I = Q([[1, 0], [0, 0]])
        A = Q([[0, 0], [1, 0]])
        d = validate(A, zeros(2, 2), I, Q([[1, 0], [0, 0]]))
        p = project(d)
        assert p.cycle == [(0, 0)] and p.charge == 1

    def test_shifted_point(self):
        d = validate(Q([[3]]), Q([["-1/2"]]), Q([[1, 0]]), Q([[0]]))
        assert project(d).cycle == [(-3, Fraction(1, 2))]

    @given(data())
    def test_charge_conservation(self, d):
        p = project(d)
        assert p.charge + len(p.cycle) == d.n and p.charge == stratum(d)[0]

    @given(data(max_n=3), st.integers(0, 2 ** 32 - 1))
    def test_gauge_invariance(self, d, seed):
        e = act(random_gauge(d.n, np.random.default_rng(seed), bound=1), d)
        p, q = project(d), project(e)
        assert multiset_close(p.cycle, q.cycle)
        if not p.weighted and not q.weighted:
            orbit_equivalent(p.regular, q.regular)

    def test_as_dict(self):
        out = project(random_datum(4, 3, 1, 2)).as_dict()
        assert out["charge"] == 1 and out["n"] == 3 and len(out["cycle"]) == 2


class TestTau:
    def test_isotropic_framing(self):
        x = XDatum.from_lists([[0, 0], [0, 0]], [[0, 0], [0, 0]], [[1, 0, 0, 0], [0, 1, 0, 0]])
        d = embed_tau(x)
        assert stratum(d) == (2, 0)
        assert is_stable(d) and is_costable(d)
        assert project(d).cycle == []

    def test_rejects_asymmetric(self):
        with pytest.raises(ShapeMismatch):
            XDatum.from_lists([[0, 1], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]])

    def test_rejects_equation(self):
        with pytest.raises(EquationViolated):
            XDatum.from_lists([[0, 0], [0, 0]], [[0, 0], [0, 0]], [[1, 0], [0, 1]])

    @given(st.integers(0, 2 ** 32 - 1))
    def test_from_invertible_form(self, seed):
        d = random_datum(4, 2, 2, np.random.default_rng(seed))
        reg, _, weighted = extract_double_dual(d)
        if weighted:
            return
        e = embed_tau(XDatum(reg.A, reg.B, reg.I, reg.omega))
        assert stratum(e) == (2, 0) and project(e).cycle == []
