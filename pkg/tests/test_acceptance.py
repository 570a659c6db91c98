"""Acceptance suite: one test per criterion, each printing a single pass/fail line."""

import numpy as np
import pytest

from helpers import Q, desk_shape, rng_for
from symplectic_adhm import fixture_path
from symplectic_adhm.adhm import (ClassicalDatum, act, iota, is_costable, is_stable, random_datum,
                                  random_gauge, stratum, validate)
from symplectic_adhm.deform import (curve_from_reachability, deform_general, reachability_residual,
                                    validate_curve)
from symplectic_adhm.errors import AdhmError
from symplectic_adhm.io import load_datum
from symplectic_adhm.linalg import (FieldKind, Subspace, equal, identity, is_nonderogatory, multiset_close,
                                    rank, to_complex, zeros)
from symplectic_adhm.monad import build_monad, check_complex, scan_singular
from symplectic_adhm.tangent import TangentVector, ambient_dim, jacobian, residual_map, tangent_report
from symplectic_adhm.uhlenbeck import project

pytestmark = pytest.mark.acceptance


def _support(points, tol=1e-6):
    out = []
    for p in points:
        if not any(multiset_close([p], [q], tol) for q in out):
            out.append(p)
    return out


def test_costability_iff_invertible_g(record_criterion):
    failures = []
    for i in range(500):
        rng = rng_for(1, i)
        r, n, k = desk_shape(i, rng)
        d = random_datum(r, n, k, rng, mix=bool(i % 2), gauge=bool(i % 3 == 0))
        if is_costable(iota(d)) != (rank(d.G) == d.n):
            failures.append((r, n, k, i))
    record_criterion(1, "co-stable iff G invertible (500 data)", not failures, f"{len(failures)} failures")
    assert not failures


def test_monad_complex_iff_adhm(record_criterion):
    bad_valid = 0
    for i in range(200):
        rng = rng_for(2, i)
        r, n, k = desk_shape(i, rng)
        d = random_datum(r, n, k, rng, gauge=True)
        if not check_complex(build_monad(iota(d))).ok:
            bad_valid += 1
    bad_corrupt = 0
    for i in range(50):
        rng = rng_for(2, 1000 + i)
        r, n, k = desk_shape(i, rng)
        c = iota(random_datum(r, n, k, rng))
        J = c.J.copy()
        nonzero = [j for j in range(r) if any(x != 0 for x in c.I[:, j])]
        row, col = int(rng.choice(nonzero)), int(rng.integers(0, n))
        J[row, col] = J[row, col] + int(rng.choice([-2, -1, 1, 2]))
        corrupted = ClassicalDatum(c.A, c.B, c.I, J, checked=False)
        defect = corrupted.defect()
        chk = check_complex(build_monad(corrupted))
        if chk.ok or not equal(chk.coefficients["z^2"], defect) or rank(defect) == 0:
            bad_corrupt += 1
    ok = bad_valid == 0 and bad_corrupt == 0
    record_criterion(2, "beta alpha = 0 iff ADHM (200 valid, 50 corrupted)", ok,
                     f"{bad_valid} valid rejected, {bad_corrupt} corrupted accepted or mismatched")
    assert ok


def test_dimension_of_regular_locus(record_criterion):
    wrong_regular = []
    for i in range(100):
        rng = rng_for(3, i)
        r, n, _ = desk_shape(i, rng)
        d = random_datum(r, n, n, rng, gauge=bool(i % 2))
        rep = tangent_report(d)
        if rep.moduli_tangent_dim != r * n + 2 * n:
            wrong_regular.append((r, n, rep.moduli_tangent_dim))
    below = []
    for i in range(100):
        rng = rng_for(3, 1000 + i)
        r, n, k = desk_shape(i, rng)
        d = random_datum(r, n, k, rng, mix=True)
        rep = tangent_report(d)
        if rep.moduli_tangent_dim < r * n + 2 * n:
            below.append((r, n, k))
    for name in ("n2_r4_isotropic.json", "n2_r4_nonisotropic.json", "n1_r2_vacuous.json"):
        rep = tangent_report(load_datum(fixture_path(name)))
        if rep.moduli_tangent_dim < rep.expected_dim:
            below.append(name)
    ok = not wrong_regular and not below
    record_criterion(3, "tangent dimension rn + 2n on invertible G, >= elsewhere", ok,
                     f"{len(wrong_regular)} regular mismatches, {len(below)} below bound")
    assert ok


def test_singular_example(record_criterion):
    zero = Q([[0, 0], [0, 0]])
    iso = validate(zero, zero, Q([[1, 0, 0, 0], [0, 1, 0, 0]]), zero)
    non = validate(zero, zero, Q([[1, 0, 0, 0], [0, 0, 1, 0]]), zero)
    rep_iso, rep_non = tangent_report(iso), tangent_report(non)
    ok = (rep_iso.moduli_tangent_dim > 12 and not rep_iso.smooth
          and rep_non.moduli_tangent_dim == 12 and rep_non.smooth)
    record_criterion(4, "n = 2, r = 4 singular example", ok,
                     f"isotropic {rep_iso.moduli_tangent_dim}, non-isotropic {rep_non.moduli_tangent_dim}")
    assert ok


def test_charge_one_is_smooth(record_criterion):
    bad = []
    for i in range(100):
        rng = rng_for(5, i)
        r = (2, 4, 6)[i % 3]
        d = random_datum(r, 1, int(rng.integers(0, 2)), rng, gauge=True)
        if not tangent_report(d).smooth:
            bad.append(i)
    record_criterion(5, "n = 1 data are smooth (100 data)", not bad, f"{len(bad)} singular")
    assert not bad


def test_nonderogatory_implies_smooth(record_criterion):
    bad, drawn, i = [], 0, 0
    while drawn < 200:
        rng = rng_for(6, i)
        r, n, k = desk_shape(i, rng)
        i += 1
        d = random_datum(r, n, k, rng, mix=True, gauge=bool(i % 2))
        if not is_nonderogatory(d.A):
            continue
        drawn += 1
        if not tangent_report(d).smooth:
            bad.append((r, n, k))
    record_criterion(6, "A nonderogatory implies smooth (200 data)", not bad,
                     f"{len(bad)} singular, {i - drawn} rejected draws")
    assert not bad


def test_deformation_witnesses(record_criterion):
    failures = []
    counts = {"k=0": 0, "k=n-1": 0, "0<k<n-1": 0}
    i = 0
    while min(counts.values()) < 50:
        rng = rng_for(7, i)
        r = (2, 4, 6)[i % 3]
        i += 1
        group = min(counts, key=counts.get)
        if group == "0<k<n-1":
            n = int(rng.integers(3, 7))
            k = int(rng.integers(1, n - 1))
        else:
            n = int(rng.integers(1, 7))
            k = 0 if group == "k=0" else n - 1
        d = random_datum(r, n, k, rng, mix=bool(i % 2), gauge=bool(i % 3 == 0))
        counts[group] += 1
        try:
            curve = deform_general(d, seed=i)
            cert = validate_curve(curve, d, seed=i)
        except AdhmError as exc:
            failures.append((r, n, k, type(exc).__name__))
            continue
        if not cert.green:
            failures.append((r, n, k, cert.failures))
    record_criterion(7, "certified deformation curves (150 data)", not failures, f"{len(failures)} failures")
    assert not failures


def test_reachability_curves(record_criterion):
    bad = 0
    for i in range(300):
        rng = rng_for(8, i)
        n = int(rng.integers(1, 7))
        T = Q(rng.integers(-3, 4, size=(n, n)).tolist())
        L = Subspace.span(Q(rng.integers(-2, 3, size=(n, int(rng.integers(1, n + 1)))).tolist()), n)
        v = zeros(n, 1)
        power = identity(n)
        for _ in range(n):
            v = v + power @ L.basis @ Q(rng.integers(-2, 3, size=(L.dim, 1)).tolist())
            power = T @ power
        r_t, l_t = curve_from_reachability(T, L, v)
        residual_zero = reachability_residual(T, v, r_t, l_t).residual_is_zero()
        in_L = all(L.contains(c) for c in l_t.coeffs)
        origin = zeros(n, 1).tolist()
        starts_at_zero = r_t.eval(0).tolist() == origin and l_t.eval(0).tolist() == origin
        if not (residual_zero and in_L and starts_at_zero):
            bad += 1
    record_criterion(8, "reachability curve identity (300 instances)", bad == 0, f"{bad} failures")
    assert bad == 0


def test_uhlenbeck_matches_monad(record_criterion):
    bad = []
    for i in range(200):
        rng = rng_for(9, i)
        r, n, k = desk_shape(i, rng)
        d = random_datum(r, n, k, rng, mix=bool(i % 2), gauge=bool(i % 3 == 0))
        point = project(d)
        jumps = scan_singular(build_monad(d))
        conserved = point.charge + len(point.cycle) == n and point.charge == k
        same_support = multiset_close(_support([j.point[:2] for j in jumps]), _support(point.cycle))
        excess = sum(j.excess for j in jumps) == len(point.cycle)
        if not (conserved and same_support and excess):
            bad.append((r, n, k, i))
    record_criterion(9, "charge conservation and cycle = monad jump locus (200 data)", not bad,
                     f"{len(bad)} failures")
    assert not bad


def test_jacobian_matches_finite_differences(record_criterion):
    worst = 0.0
    h = 1e-7
    for i in range(50):
        rng = rng_for(10, i)
        # for n = 1 the residual map vanishes identically, so start at n = 2
        r, n = (2, 4, 6)[i % 3], 2 + i % 5
        d = random_datum(r, n, int(rng.integers(0, n + 1)), rng, field=FieldKind.COMPLEX)
        d = act(random_gauge(n, rng, FieldKind.COMPLEX), d)
        size = ambient_dim(n, r)
        v = rng.normal(size=size) + 1j * rng.normal(size=size)
        tv = TangentVector.unflatten(v, n, r)
        K = to_complex(d.omega.inverse)
        base = [to_complex(m) for m in d.matrices()]

        def residual(s):
            A, B, I, G = (m + s * x for m, x in zip(base, (tv.X_A, tv.X_B, tv.X_I, tv.X_G)))
            return residual_map(A, B, I, G, K, n)

        fd = (residual(h) - residual(-h)) / (2 * h)
        jv = jacobian(d) @ v
        err = np.linalg.norm(fd - jv) / max(np.linalg.norm(jv), 1e-300)
        worst = max(worst, err)
    ok = worst <= 1e-6
    record_criterion(10, "jacobian vs finite differences (50 float data)", ok, f"worst relative error {worst:.2e}")
    assert ok


def test_gauge_invariance(record_criterion):
    bad = []
    for i in range(100):
        rng = rng_for(11, i)
        r, n, k = desk_shape(i, rng)
        d = random_datum(r, n, k, rng, mix=True)
        ref = (is_stable(d), stratum(d), tangent_report(d).moduli_tangent_dim, project(d).cycle)
        for j in range(5):
            g = random_gauge(n, rng, bound=1)
            e = act(g, d)  # construction re-validates all four equations
            got = (is_stable(e), stratum(e), tangent_report(e).moduli_tangent_dim, project(e).cycle)
            if got[:3] != ref[:3] or not multiset_close(got[3], ref[3]):
                bad.append((r, n, k, i, j))
    record_criterion(11, "gauge invariance (100 data x 5 gauges)", not bad, f"{len(bad)} failures")
    assert not bad
