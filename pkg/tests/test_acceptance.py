"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line;
run with ``pytest tests/test_acceptance.py -s`` to see them."""

import time
from fractions import Fraction as F

import numpy as np
import pytest

import oracles
from diametral.errors import NotAOH
from diametral.harness import FalsifierBudget, run_falsifier
from diametral.harness.sampling import make_rng, random_slice, slice_containing
from diametral.norm2 import HEX, L1, L2, LINF, AbsoluteNorm
from diametral.spaces import (C01PL, FiniteDim, L1Step, NonDeltaCertificate, PLFunction,
                              SliceSpec, StepFunction, brute_slice_sup, check_witness,
                              daugavet_witness)
from diametral.sums import (SumSpace, SumVector, aoh_daugavet_point,
                            combine_non_daugavet_certificates, combine_non_deltak_certificates,
                            component_witness_from_sum, conjugate_pair_exists, daugavet_point,
                            delta_point_infty, deltak_point, lift_non_delta_certificate)

EPS = (F(1, 2), F(1, 10), F(1, 100))
E1 = (F(1), F(0))
HALF = F(1, 2)
INF = float("inf")


def verdict(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def test_criterion_1_classifier():
    worst, fails = 0.0, []
    expect = [(L1, "aoh", True), (LINF, "aoh", True), (HEX, "aoh", False)]
    expect += [(AbsoluteNorm.lp(p), "alpha", None) for p in (F(3, 2), 2, 4)]
    for N, variant, beta in expect:
        t0 = time.perf_counter()
        cls = N.classify()
        worst = max(worst, time.perf_counter() - t0)
        if cls.variant != variant or (beta is not None and cls.beta != beta):
            fails.append(N.name)
    star = HEX.star_constants()
    ref = oracles.bisect_star(oracles.hex_psi)
    star_ok = star == (F(1, 4), F(1, 4)) and max(abs(float(s) - r) for s, r in zip(star, ref)) < 1e-9
    verdict(1, not fails and star_ok and worst < 1,
            f"mismatches={fails}, hex star={star}, slowest={worst:.3f}s")


def test_criterion_2_witness_soundness():
    cases = [(C01PL(), PLFunction.make([0, F(1, 3), F(2, 3), 1], [F(1, 2), F(-1), F(1, 4), 0])),
             (L1Step(), StepFunction.make([0, F(1, 8), 1], [F(4), F(-4, 7)]))]
    total = failures = 0
    for sp, x in cases:
        rng = make_rng(2024)
        for _ in range(200):
            sl = random_slice(sp, rng)
            for eps in EPS:
                w = daugavet_witness(sp, x, sl, eps)
                total += 1
                failures += not check_witness(sp, x, sl, eps, w.u)
    verdict(2, failures == 0, f"{total} exact rechecks, {failures} failures")


def test_criterion_3_sum_daugavet_pipeline():
    X = C01PL()
    total = failures = 0
    for N in (L1, LINF, HEX):
        pt = aoh_daugavet_point(N, X, X, X.unit_vector(), X.unit_vector())
        rng = make_rng(22)
        for _ in range(100):
            sl = random_slice(pt.space, rng)
            for eps in EPS:
                w = pt.witness(sl, eps)
                total += 1
                failures += not check_witness(pt.space, pt.vector, sl, eps, w.u)
    try:
        aoh_daugavet_point(L2, X, X, X.unit_vector(), X.unit_vector())
        refused = False
    except NotAOH:
        refused = True
    verdict(3, failures == 0 and refused,
            f"{total} sum witnesses, {failures} failures, l_2 refused={refused}")


def test_criterion_4_component_transfer():
    X = C01PL()
    one = X.unit_vector()
    total = failures = 0
    for N in (L1, HEX):
        pt = aoh_daugavet_point(N, X, X, one, one)
        rng = make_rng(31)
        for which in ("X", "Y"):
            for _ in range(100):
                sl = random_slice(X, rng)
                w = component_witness_from_sum(pt.space, pt, which, sl, F(1, 10))
                total += 1
                failures += not check_witness(X, one, sl, F(1, 10), w.u)
    l2 = FiniteDim(2, 2)
    pt = aoh_daugavet_point(LINF, X, l2, one, E1, b=F(3, 10))
    rng = make_rng(32)
    for _ in range(100):
        sl = random_slice(X, rng)
        w = component_witness_from_sum(pt.space, pt, "X", sl, F(1, 10))
        total += 1
        failures += not check_witness(X, one, sl, F(1, 10), w.u)
    verdict(4, failures == 0, f"{total} component witnesses, {failures} failures")


def _certificates():
    l2 = FiniteDim(2, 2)
    Zi, Z1 = SumSpace(l2, l2, LINF), SumSpace(l2, l2, L1)
    c = NonDeltaCertificate(E1, F(1, 4), F(1, 2), 1, False)
    c1 = NonDeltaCertificate(E1, F(1, 4), F(1, 2))
    c2 = NonDeltaCertificate(E1, F(1, 4), F(1, 2), 2)
    return [
        ("non-Daugavet combine", Zi, SumVector(E1, E1), combine_non_daugavet_certificates(Zi, c, c)),
        ("lift", Z1, SumVector((HALF, 0), (HALF, 0)),
         lift_non_delta_certificate(Z1, HALF, HALF, E1, E1, c1)),
        ("non-Delta_k combine", Zi, SumVector(E1, E1),
         combine_non_deltak_certificates(Zi, 2, c2, 2, c2)),
    ]


def test_criterion_5_certificates():
    problems = []
    for name, Z, z, cert in _certificates():
        exact = brute_slice_sup(Z, z, cert.slice, "exact")
        out = run_falsifier(Z, z, cert, FalsifierBudget(samples=100_000))
        if out.violation is not None:
            problems.append(f"{name}: falsified")
        if not exact <= float(cert.bound) - 1e-6:
            problems.append(f"{name}: exact sup {exact} vs bound {float(cert.bound)}")
        if out.best > exact + 1e-6:
            problems.append(f"{name}: search {out.best} above exact {exact}")
        # corrupt: claim a bound 0.1 below the true supremum
        bad = cert.replace(eps=2 - (F(exact).limit_denominator(10 ** 9) - F(1, 10)))
        if run_falsifier(Z, z, bad, FalsifierBudget(samples=10_000)).violation is None:
            problems.append(f"{name}: corruption missed")
    verdict(5, not problems, "; ".join(problems) or "3 certificates hold, 3 corruptions caught")


@pytest.mark.parametrize("k", [2, 4])
def test_criterion_6_deltak_not_delta(k):
    X, Y = FiniteDim(2, 2), C01PL()
    Z = SumSpace(X, Y, L1)
    zp = deltak_point(Z, k, E1, daugavet_point(Y, Y.unit_vector()))
    rng = make_rng(43 + k)
    total = failures = 0
    for _ in range(100):
        sl = slice_containing(Z, zp.vector, rng)
        for eps in EPS:
            w = zp.witness(sl, eps)
            total += 1
            failures += not (w.alpha == k * sl.alpha
                             and check_witness(Z, zp.vector, SliceSpec(sl.f, w.alpha), eps, w.u))
    cert = lift_non_delta_certificate(Z, 1 - F(1, k), F(1, k), E1, Y.unit_vector(),
                                      NonDeltaCertificate(E1, F(1, 4), F(1, 2)))
    inside = Z.pair(cert.f, zp.vector) > 1 - cert.alpha
    out = run_falsifier(Z, zp.vector, cert, FalsifierBudget(samples=100_000))
    verdict(6, failures == 0 and inside and cert.k == 1 and out.violation is None,
            f"k={k}: {total} widened witnesses, {failures} failures; "
            f"non-Delta certificate {out.verdict}, eps={float(cert.eps):.3g}")


def test_criterion_7_nested_delta():
    inner = SumSpace(FiniteDim(2, 2), C01PL(), L1)
    yo = daugavet_point(inner.Y, inner.Y.unit_vector())
    zx = deltak_point(inner, 2, E1, yo)
    Z = SumSpace(inner, inner, LINF)
    dp = delta_point_infty(Z, 2, 2, zx, zx)
    rng = make_rng(44)
    total = failures = 0
    for _ in range(50):
        sl = slice_containing(Z, dp.vector, rng)
        for eps in EPS:
            w = dp.witness(sl, eps)
            total += 1
            failures += not check_witness(Z, dp.vector, sl, eps, w.u)
    verdict(7, failures == 0, f"{total} nested-sum Delta witnesses, {failures} failures")


def test_criterion_8_conjugate_arithmetic():
    rng = np.random.default_rng(45)
    bad = 0
    for _ in range(10_000):
        den_a, den_b = (int(d) for d in rng.integers(1, 60, size=2))
        a = F(int(rng.integers(den_a + 1, 10 * den_a + 1)), den_a)
        b = F(int(rng.integers(den_b + 1, 10 * den_b + 1)), den_b)
        pair = conjugate_pair_exists(a, b)
        ok = (pair is not None) == (1 / a + 1 / b >= 1)
        if pair is not None:
            p, q = pair
            ok = ok and p >= a and q >= b and 1 / p + 1 / q == 1
        bad += not ok
    verdict(8, bad == 0, f"10000 rational pairs, {bad} failures")


def test_criterion_9_oracle_cross_check():
    rng = np.random.default_rng(46)
    worst, count = 0.0, 0
    for p in (1, INF, 2):
        sp = FiniteDim(2, p)
        dual = {1: INF, INF: 1, 2: 2}[p]
        for _ in range(500):
            x = rng.uniform(-1, 1, 2)
            x /= np.linalg.norm(x, ord=p)
            g = rng.uniform(-1, 1, 2)
            g /= np.linalg.norm(g, ord=dual)
            level = float(rng.uniform(-0.9, 0.98))
            exact = sp.sup_distance(x, g, level)
            scan = sp.angle_scan_sup(x, g, level)
            if exact == -np.inf and scan == -np.inf:
                continue
            worst = max(worst, abs(exact - scan))
            count += 1
    verdict(9, worst <= 1e-6, f"{count} instances, worst gap {worst:.2e}")
