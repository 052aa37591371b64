from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from diametral.errors import DomainError, Infeasible, NotAOH
from diametral.norm2 import (HEX, L1, L2, LINF, AbsoluteNorm, classify, dual_eval, eval_norm,
                             find_kl, flatness_delta, has_beta, star_constants, verify_flatness)

# frozen from the bisection and grid oracles in tests/oracles.py
HEX_STAR = (F(1, 4), F(1, 4))
HEX_PAIR = (F(5, 8), F(5, 8))
L2_FLATNESS_AT_TENTH = 0.0015625  # regression constant

nonneg = st.fractions(min_value=0, max_value=4, max_denominator=64)


@st.composite
def pl_norms(draw):
    """Convex PL profiles: a random max of edge functionals sampled on a grid."""
    m = draw(st.integers(1, 3))
    lines = [(F(1), F(0)), (F(0), F(1))]
    for _ in range(m):
        al = draw(st.fractions(min_value=0, max_value=1, max_denominator=8))
        be = draw(st.fractions(min_value=0, max_value=1, max_denominator=8))
        lines.append((al, be))
    # N(a, b) = max(a, b, al a + be b); rescale so N(1,0) = N(0,1) = 1 holds
    knots = []
    for i in range(17):
        t = F(i, 16)
        knots.append((t, max(al * (1 - t) + be * t for al, be in lines)))
    return AbsoluteNorm.piecewise(knots)


def test_eval_examples():
    assert eval_norm(L1, F(3, 10), F(7, 10)) == 1
    assert eval_norm(LINF, 1, 1) == 1
    assert HEX(1, 1) == F(8, 5)
    assert HEX(0, 0) == 0


def test_eval_rejects_negative():
    with pytest.raises(DomainError):
        L1(-1, 0)


def test_dual_examples():
    assert dual_eval(L1, 1, 1) == 1
    assert dual_eval(L2, F(3, 5), F(4, 5)) == pytest.approx(1.0, abs=1e-12)
    assert dual_eval(HEX, F(4, 5), F(4, 5)) == 1


def test_star_constants():
    assert star_constants(LINF) == (1, 1)
    assert star_constants(L2) == (0.0, 0.0)
    assert star_constants(HEX) == HEX_STAR
    ref = oracles.bisect_star(oracles.hex_psi)
    assert ref == pytest.approx((0.25, 0.25), abs=1e-12)


def test_has_beta():
    assert has_beta(L1).pair == (F(1, 2), F(1, 2))
    assert has_beta(LINF).pair == (1, 1)
    assert has_beta(L2) is None
    assert has_beta(HEX) is None


@pytest.mark.parametrize("p", [F(3, 2), 2, 4])
def test_lp_are_alpha(p):
    cls = classify(AbsoluteNorm.lp(p))
    assert cls.variant == "alpha"
    # the grid oracle sees a strictly positive defect for (**)
    assert oracles.aoh_defect(oracles.lp_psi(float(p)), 0.0, 0.0) > 1e-3


def test_classify_polyhedral():
    c1 = classify(L1)
    assert c1.is_aoh and c1.beta and c1.pair.pair == (F(1, 2), F(1, 2))
    ci = classify(LINF)
    assert ci.is_aoh and ci.beta and ci.pair.pair == (1, 1)
    ch = classify(HEX)
    assert ch.is_aoh and not ch.beta and ch.pair.pair == HEX_PAIR
    assert oracles.aoh_defect(oracles.hex_psi, 0.25, 0.25) < 1e-9


def test_find_kl_examples():
    half = (F(1, 2), F(1, 2))
    assert find_kl(L1, half, (1, 0)).pair == (1, 0)
    assert find_kl(LINF, (1, 1), (1, 0)).pair == (1, 1)
    # (1/2, 1/2) is not norm one for the dual of l_1; (1, 1) is
    assert find_kl(L1, half, (1, 1)).pair == (1, 0)
    with pytest.raises(DomainError):
        find_kl(L1, half, half)
    with pytest.raises(NotAOH):
        find_kl(L2, (1, 0), (1, 0))


def test_find_kl_infeasible():
    # the pair (1, 0) is diametral only to points with a = 1 under this norm
    N = AbsoluteNorm.piecewise([(0, 1), (F(1, 2), F(1, 2)), (1, 1)])  # l_inf
    with pytest.raises(Infeasible):
        N.find_kl((0, F(1, 2)), (1, 0))


def test_flatness_examples():
    assert flatness_delta(L1, F(1, 10)) == F(1, 20)
    assert flatness_delta(LINF, F(1, 10)) == F(1, 20)
    d2 = flatness_delta(L2, 0.1)
    assert d2 == pytest.approx(L2_FLATNESS_AT_TENTH)
    for N, d, psi in ((L1, F(1, 20), oracles.lp_psi(1.0)), (L2, d2, oracles.lp_psi(2.0)),
                      (HEX, flatness_delta(HEX, F(1, 10)), oracles.hex_psi)):
        assert verify_flatness(N, d, 0.1)[0]
        assert oracles.flatness_violation(psi, float(d), 0.1) < 0.1


def test_sphere_point_and_rejections():
    p = HEX.sphere_point(F(1, 2))
    assert HEX(p.a, p.b) == 1
    with pytest.raises(DomainError):
        HEX.point(0, 0)
    with pytest.raises(DomainError):
        AbsoluteNorm.piecewise([(0, 1), (F(1, 2), F(2, 5)), (1, 1)])
    with pytest.raises(DomainError):
        AbsoluteNorm.piecewise([(0, 1), (F(1, 4), F(9, 10)), (F(1, 2), 1), (1, 1)])


def test_spec_roundtrip():
    assert AbsoluteNorm.piecewise(HEX.knots).to_spec() == HEX.to_spec()


# properties ---------------------------------------------------------------------

@given(pl_norms(), nonneg, nonneg)
def test_sandwich(N, a, b):
    assert max(a, b) <= N(a, b) <= a + b


@given(pl_norms(), nonneg, nonneg, nonneg, nonneg)
def test_monotone_and_triangle(N, a, b, c, d):
    assert N(a + c, b + d) <= N(a, b) + N(c, d)
    assert N(a, b) <= N(a + c, b + d)
    assert N(3 * a, 3 * b) == 3 * N(a, b)


@given(pl_norms(), nonneg, nonneg)
def test_bidual(N, a, b):
    # N(a, b) = max over the dual sphere of a c + b d; the dual sphere of a PL
    # norm is spanned by its edge functionals
    assert N(a, b) == max(a * al + b * be for al, be in N.pieces)
    for al, be in N.pieces:
        assert N.dual_eval(al, be) == 1


@given(pl_norms())
def test_classify_total(N):
    cls = N.classify()
    assert cls.variant in ("alpha", "aoh")
    if cls.is_aoh:
        assert N.satisfies_star_star(cls.pair.a, cls.pair.b)
    if N.has_beta() is not None:
        assert cls.is_aoh


@given(pl_norms(), st.fractions(min_value=0, max_value=1, max_denominator=16))
def test_find_kl_equations(N, s):
    cls = N.classify()
    if not cls.is_aoh:
        with pytest.raises(NotAOH):
            N.find_kl((1, 0), (1, 0))
        return
    c, d = 1 - s, s
    n = N.dual_eval(c, d)
    c, d = c / n, d / n
    try:
        kl = N.find_kl(cls.pair.pair, (c, d))
    except Infeasible:
        return
    assert N(kl.a, kl.b) == 1
    assert c * kl.a + d * kl.b == 1
    assert N(cls.pair.a + kl.a, cls.pair.b + kl.b) == 2


@given(pl_norms(), st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_sphere_monotone(N, t):
    p = N.sphere_point(t)
    assert N(p.a, p.b) == 1
    if t < 1:
        q = N.sphere_point(t + (1 - t) / 2)
        assert q.a <= p.a and q.b >= p.b


def test_lp_float_axioms_on_grid():
    g = np.linspace(0, 2, 40)
    A, B = np.meshgrid(g, g)
    for p in (1.5, 2, 4):
        N = AbsoluteNorm.lp(p)
        v = N.eval_array(A, B)
        assert np.all(v <= A + B + 1e-12) and np.all(v >= np.maximum(A, B) - 1e-12)
        assert N.dual_eval(*N.norming_dual(0.3, 0.7)) == pytest.approx(1.0, abs=1e-9)
