from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import Q
from symplectic_adhm.adhm import (ClassicalDatum, GaugeElement, SymplecticForm, act, iota, iota_fiber_dim,
                                  is_costable, is_stable, orbit_equivalent, random_datum, random_gauge,
                                  stabilizer_dim, stratum, validate, validation_report)
from symplectic_adhm.errors import EquationViolated, NotEquivalent, ShapeMismatch, SingularGauge
from symplectic_adhm.linalg import FieldKind, commutator, equal, identity, is_zero, rank, zeros


@st.composite
def data(draw, max_n=4, k=None):
    r = draw(st.sampled_from([2, 4, 6]))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n)) if k is None else k(n)
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_datum(r, n, k, np.random.default_rng(seed), mix=draw(st.booleans()),
                        gauge=draw(st.booleans()))


@st.composite
def data_with_gauge(draw, max_n=4):
    d = draw(data(max_n))
    g = random_gauge(d.n, np.random.default_rng(draw(st.integers(0, 2 ** 32 - 1))), bound=1)
    return d, g


class TestSymplecticForm:
    def test_darboux(self):
        om = SymplecticForm.darboux(4)
        assert equal(om.matrix.T, -om.matrix)
        assert equal(-om.inverse, om.matrix)

    def test_rejects_odd_and_degenerate(self):
        with pytest.raises(ShapeMismatch):
            SymplecticForm.darboux(3)
        with pytest.raises(ShapeMismatch):
            SymplecticForm.from_matrix(zeros(2, 2))
        with pytest.raises(ShapeMismatch):
            SymplecticForm.from_matrix(Q([[0, 1], [1, 0]]))


class TestValidate:
    def test_vacuous_charge_one(self):
        d = validate(Q([[0]]), Q([[0]]), Q([[1, 0]]), Q([[0]]))
        assert (d.n, d.r) == (1, 2)

    def test_surjective_framing_with_zero_form(self):
        zero = zeros(2, 2)
        d = validate(zero, zero, Q([[1, 0, 0, 0], [0, 1, 0, 0]]), zero)
        assert stratum(d) == (0, 2) and is_stable(d)

    def test_asymmetric_a_violates_symmetry(self):
        with pytest.raises(EquationViolated) as exc:
            validate(Q([[0, 1], [0, 0]]), zeros(2, 2), zeros(2, 2), identity(2))
        names = [c.name for c in exc.value.report.failures]
        assert names == ["GA-symmetry"]

    def test_report_names_each_equation(self):
        rep = validation_report(Q([[1]]), Q([[0]]), Q([[1, 0]]), Q([[1]]))
        assert rep.ok
        assert [c.name for c in rep.checks] == ["G-symmetric", "GA-symmetry", "GB-symmetry", "ADHM"]

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            validate(zeros(2, 2), zeros(2, 2), zeros(2, 3), zeros(2, 2))

    def test_float_tolerance(self):
        d = validate(np.array([[1e-12]]), np.zeros((1, 1)), np.array([[1.0, 0.0]]), np.eye(1))
        assert d.field is FieldKind.COMPLEX

    @given(data())
    def test_random_data_are_valid(self, d):
        assert validation_report(*d.matrices(), omega=d.omega).ok
        assert is_stable(d)


class TestIota:
    def test_zero_form_gives_zero_j(self):
        d = validate(zeros(2, 2), zeros(2, 2), Q([[1, 0, 0, 0], [0, 1, 0, 0]]), zeros(2, 2))
        assert is_zero(iota(d).J)

    def test_charge_one(self):
        g = Fraction(3, 2)
        d = validate(Q([[0]]), Q([[0]]), Q([[1, 0]]), Q([[g]]))
        assert equal(iota(d).J, Q([[0], [-g]]))

    @given(data())
    def test_classical_equation_holds(self, d):
        c = iota(d)
        assert all(x == 0 for x in (commutator(c.A, c.B) + c.I @ c.J).flat)

    @given(data())
    def test_costable_iff_g_invertible(self, d):
        assert is_costable(iota(d)) == (rank(d.G) == d.n)

    @given(data(max_n=3))
    def test_form_determined_by_rest(self, d):
        assert iota_fiber_dim(d) == 0


class TestStability:
    def test_examples(self):
        assert is_stable(validate(zeros(2, 2), zeros(2, 2), Q([[1, 0], [0, 1]]), zeros(2, 2)))
        assert not is_stable(validate(zeros(2, 2), zeros(2, 2), zeros(2, 2), zeros(2, 2)))
        assert is_stable(validate(Q([[0, 0], [1, 0]]), zeros(2, 2), Q([[1, 0], [0, 0]]), zeros(2, 2)))

    def test_costability_examples(self):
        zero = ClassicalDatum(zeros(1, 1), zeros(1, 1), zeros(1, 2), zeros(2, 1))
        assert not is_costable(zero)
        injective = ClassicalDatum(zeros(1, 1), zeros(1, 1), zeros(1, 2), Q([[1], [0]]))
        assert is_costable(injective)

    def test_classical_equation_is_checked(self):
        with pytest.raises(EquationViolated):
            ClassicalDatum(zeros(1, 1), zeros(1, 1), Q([[1, 0]]), Q([[1], [0]]))


class TestGaugeAction:
    def test_identity(self):
        d = random_datum(4, 3, 2, 5)
        assert act(identity(3), d).same_as(d)

    def test_scalar(self):
        d = random_datum(4, 3, 2, 6)
        lam = Fraction(2)
        e = act(lam * identity(3), d)
        assert equal(e.A, d.A) and equal(e.B, d.B)
        assert equal(e.I, lam * d.I) and equal(e.G, d.G / lam ** 2)

    def test_singular_gauge(self):
        with pytest.raises(SingularGauge):
            GaugeElement(zeros(2, 2))

    @given(data_with_gauge())
    def test_predicates_are_invariant(self, pair):
        d, g = pair
        e = act(g, d)
        assert is_stable(e) == is_stable(d)
        assert is_costable(iota(e)) == is_costable(iota(d))
        assert stratum(e) == stratum(d)

    @given(data_with_gauge(max_n=3))
    def test_orbit_equivalent_recovers_gauge(self, pair):
        d, g = pair
        found = orbit_equivalent(d, act(g, d))
        assert equal(found.g, g.g)

    @given(data(max_n=3))
    def test_free_action(self, d):
        assert stabilizer_dim(d) == 0
        assert equal(orbit_equivalent(d, d).g, identity(d.n))

    def test_different_rank_not_equivalent(self):
        with pytest.raises(NotEquivalent):
            orbit_equivalent(random_datum(2, 2, 2, 1), random_datum(2, 2, 1, 1))


class TestRandomDatum:
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_rank_and_validity(self, k):
        d = random_datum(4, 3, k, 11)
        assert rank(d.G) == k and is_stable(d)

    def test_zero_form_commuting(self):
        d = random_datum(2, 3, 0, 2)
        assert is_zero(commutator(d.A, d.B))

    def test_full_rank_costable(self):
        assert is_costable(random_datum(6, 3, 3, 4))

    def test_reproducible(self):
        assert random_datum(4, 3, 1, 9, mix=True).same_as(random_datum(4, 3, 1, 9, mix=True))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            random_datum(3, 2, 1, 0)
        with pytest.raises(ValueError):
            random_datum(2, 2, 3, 0)
