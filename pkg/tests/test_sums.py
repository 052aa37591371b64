from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diametral.errors import (BEqualsOne, ConjugateMismatch, DomainError, MissingOracle, NotAOH,
                              NotApplicable, SliceDoesNotContainPoint, WidthTooLarge,
                              ZeroComponent)
from diametral.harness.sampling import make_rng, random_slice, slice_containing
from diametral.norm2 import HEX, L1, L2, LINF, AbsoluteNorm
from diametral.spaces import (C01PL, FiniteDim, L1Step, NonDeltaCertificate, PLFunction,
                              PointMasses, SliceSpec, StepFunction, brute_slice_sup,
                              check_witness)
from diametral.sums import (DeltaIndexSet, SumSpace, SumVector, aoh_daugavet_point,
                            combine_non_daugavet_certificates, combine_non_deltak_certificates,
                            component_witness_from_sum, conjugate_pair_exists, daugavet_point,
                            delta_point_infty, deltak_point, deltak_witness_l1,
                            infty_delta_witness, lift_non_delta_certificate,
                            sum_daugavet_witness)

HALF = F(1, 2)
E1 = (F(1), F(0))


def e1_cert(k=1, contains=True):
    return NonDeltaCertificate(E1, F(1, 4), F(1, 2), k, contains)


@pytest.fixture
def l1_point(c01, one):
    return aoh_daugavet_point(L1, c01, c01, one, one)


def delta(s):
    return PointMasses.make([(s, F(1))])


# the sum space itself --------------------------------------------------------------

def test_sum_norms(c01, l2, one):
    Z = SumSpace(c01, l2, HEX)
    v = SumVector(one, (F(3, 5), F(4, 5)))
    assert Z.norm(v) == HEX(1, 1) == F(8, 5)
    f = SumVector(delta(0), (F(3, 5), F(4, 5)))
    assert Z.dual_norm(f) == HEX.dual_eval(1, 1)
    assert Z.pair(f, v) == 2
    g = Z.norming_functional(v)
    assert Z.dual_norm(g) == pytest.approx(1) and Z.pair(g, v) == pytest.approx(Z.norm(v))


def test_nested_sum_is_a_space(c01, l2, one):
    inner = SumSpace(l2, c01, L1)
    Z = SumSpace(inner, inner, LINF)
    v = SumVector(SumVector(E1, one), SumVector((0, 0), one))
    assert Z.norm(v) == 2
    assert Z.to_spec()["sum"]["X"] == inner.to_spec()


# Daugavet points in sums -----------------------------------------------------------

def test_aoh_point_l1(l1_point, one):
    assert l1_point.info["pair"] == (HALF, HALF)
    assert l1_point.vector.x(0) == HALF and l1_point.vector.y(1) == HALF
    assert l1_point.space.norm(l1_point.vector) == 1


def test_aoh_point_linf_any_b(c01, l2, one):
    pt = aoh_daugavet_point(LINF, c01, l2, one, E1, b=F(3, 10))
    assert pt.vector.y == (F(3, 10), 0)
    assert pt.space.norm(pt.vector) == 1


def test_aoh_point_refusals(c01, l2, one):
    with pytest.raises(NotAOH):
        aoh_daugavet_point(L2, c01, c01, one, one)
    with pytest.raises(MissingOracle):
        aoh_daugavet_point(L1, c01, l2, one, E1)
    # (1, 0) under the hex-like norm needs only the x oracle
    N = AbsoluteNorm.piecewise([(0, 1), (F(2, 3), F(2, 3)), (1, 1)])
    pt = aoh_daugavet_point(N, c01, l2, one, E1, pair=(1, 0))
    assert pt.vector.y == (0, 0)


@pytest.mark.parametrize("p", [F(3, 2), 2, 4])
def test_dichotomy_gate(c01, one, p):
    with pytest.raises(NotAOH):
        aoh_daugavet_point(AbsoluteNorm.lp(p), c01, c01, one, one)


def test_sum_witness_example(l1_point):
    Z = l1_point.space
    f = SumVector(delta(F(1, 3)), PointMasses((), ()))
    w = sum_daugavet_witness(Z, l1_point, SliceSpec(f, F(1, 10)), F(1, 5))
    assert w.trace["kl"] == (1, 0)
    assert Z.Y.norm(w.u.y) == 0
    assert Z.pair(f, w.u) > F(9, 10)
    assert Z.norm(Z.sub(l1_point.vector, w.u)) >= 2 - F(1, 5)


def test_sum_witness_linf_example(c01, l2, one):
    pt = aoh_daugavet_point(LINF, c01, l2, one, E1, b=F(3, 10))
    Z = pt.space
    f = SumVector(delta(0), (0, 0))
    w = pt.witness(SliceSpec(f, F(1, 10)), F(1, 10))
    assert check_witness(Z, pt.vector, SliceSpec(f, F(1, 10)), F(1, 10), w.u)


def test_sum_witness_eps_two(l1_point):
    Z = l1_point.space
    f = SumVector(delta(F(1, 3)), PointMasses((), ()))
    w = sum_daugavet_witness(Z, l1_point, SliceSpec(f, F(1, 10)), 2)
    assert Z.pair(f, w.u) > F(9, 10)


def test_sum_witness_needs_unit_functional(l1_point):
    f = SumVector(delta(0), delta(0))  # norm 1 in the l_inf dual
    Z = l1_point.space
    with pytest.raises(DomainError):
        sum_daugavet_witness(Z, l1_point, SliceSpec(Z.scale_functional(2, f), F(1, 10)), F(1, 2))


@pytest.mark.parametrize("N", [L1, LINF, HEX], ids=["l1", "linf", "hex"])
@given(seed=st.integers(0, 2 ** 32 - 1), eps=st.sampled_from([F(1, 2), F(1, 10), F(1, 100)]))
def test_sum_witness_property(N, seed, eps):
    X = C01PL()
    x = PLFunction.make([0, HALF, 1], [F(1), F(-1, 2), F(1, 3)])
    pt = aoh_daugavet_point(N, X, X, x, X.unit_vector())
    sl = random_slice(pt.space, make_rng(seed))
    w = pt.witness(sl, eps)
    assert check_witness(pt.space, pt.vector, sl, eps, w.u)


def test_mixed_models_sum(one):
    X, Y = C01PL(), L1Step()
    y = StepFunction.indicator(0, 1)
    pt = aoh_daugavet_point(HEX, X, Y, one, y)
    rng = make_rng(3)
    for _ in range(10):
        sl = random_slice(pt.space, rng)
        w = pt.witness(sl, F(1, 10))
        assert check_witness(pt.space, pt.vector, sl, F(1, 10), w.u)


# component witnesses ---------------------------------------------------------------

def test_component_example(l1_point, c01, one):
    sl = SliceSpec(delta(F(1, 4)), F(1, 10))
    w = component_witness_from_sum(l1_point.space, l1_point, "X", sl, F(3, 10))
    assert c01.pair(sl.f, w.u) > F(9, 10)
    assert c01.norm(c01.sub(one, w.u)) >= F(17, 10)


def test_component_linf(c01, l2, one):
    pt = aoh_daugavet_point(LINF, c01, l2, one, E1, b=F(3, 10))
    rng = make_rng(11)
    for _ in range(20):
        sl = random_slice(c01, rng)
        w = component_witness_from_sum(pt.space, pt, "X", sl, F(1, 10))
        assert check_witness(c01, one, sl, F(1, 10), w.u)
    with pytest.raises(NotApplicable):
        component_witness_from_sum(pt.space, pt, "Y", SliceSpec(E1, F(1, 2)), F(1, 2))


def test_component_errors(c01, l2, one):
    N = AbsoluteNorm.piecewise([(0, 1), (F(2, 3), F(2, 3)), (1, 1)])
    pt = aoh_daugavet_point(N, c01, l2, one, E1, pair=(1, 0))
    with pytest.raises(ZeroComponent):
        component_witness_from_sum(pt.space, pt, "Y", SliceSpec(E1, F(1, 2)), F(1, 2))
    both = aoh_daugavet_point(LINF, c01, c01, one, one)
    with pytest.raises(NotApplicable):
        component_witness_from_sum(both.space, both, "X", SliceSpec(delta(0), F(1, 2)), F(1, 2))


@pytest.mark.parametrize("N", [L1, HEX], ids=["l1", "hex"])
def test_component_property(N, c01, one):
    pt = aoh_daugavet_point(N, c01, c01, one, one)
    rng = make_rng(5)
    for which in ("X", "Y"):
        for _ in range(10):
            sl = random_slice(c01, rng)
            w = component_witness_from_sum(pt.space, pt, which, sl, F(1, 10))
            assert check_witness(c01, one, sl, F(1, 10), w.u)


# certificates ----------------------------------------------------------------------

def test_combine_non_daugavet(l2):
    Z = SumSpace(l2, l2, LINF)
    c = e1_cert(contains=False)
    cert = combine_non_daugavet_certificates(Z, c, c)
    assert cert.f == SumVector((HALF, 0), (HALF, 0))
    assert (cert.alpha, cert.eps, cert.contains_point) == (F(1, 8), F(1, 4), False)
    assert brute_slice_sup(Z, SumVector(E1, E1), cert.slice) < F(7, 4)


def test_combine_non_daugavet_errors(l2):
    Z = SumSpace(l2, l2, LINF)
    bad = NonDeltaCertificate(E1, F(1, 2), F(1, 2), 1, False)
    with pytest.raises(WidthTooLarge):
        combine_non_daugavet_certificates(Z, bad, bad)
    # small widths push the gap towards eps
    tiny = NonDeltaCertificate(E1, F(1, 1000), F(1, 2), 1, False)
    assert combine_non_daugavet_certificates(Z, tiny, tiny).eps == F(1, 2) - F(1, 1000)


def test_lift_l1(c01, l2, one):
    Z = SumSpace(l2, c01, L1)
    cert = lift_non_delta_certificate(Z, HALF, HALF, E1, one, e1_cert())
    assert (cert.trace["c"], cert.trace["d"]) == (1, 1)
    assert cert.trace["gamma"] == F(1, 16) and cert.trace["beta"] == F(1, 64)
    z = SumVector((HALF, 0), PLFunction.constant(HALF))
    assert Z.pair(cert.f, z) > 1 - cert.alpha
    assert Z.dual_norm(cert.f) == 1


def test_lift_b_zero(c01, l2, one):
    # l_2 norms (1, 0) only by (1, 0), so the y part of f vanishes
    Z = SumSpace(l2, c01, L2)
    cert = lift_non_delta_certificate(Z, 1, 0, E1, one, e1_cert())
    assert cert.f.x == E1 and Z.Y.dual_norm(cert.f.y) == 0


def test_lift_errors(c01, l2, one):
    with pytest.raises(BEqualsOne):
        lift_non_delta_certificate(SumSpace(l2, c01, LINF), 1, 1, E1, one, e1_cert())
    with pytest.raises(DomainError):
        lift_non_delta_certificate(SumSpace(l2, c01, L1), 1, HALF, E1, one, e1_cert())


def test_lift_exact_bound():
    l2 = FiniteDim(2, 2)
    Z = SumSpace(l2, l2, L1)
    cert = lift_non_delta_certificate(Z, HALF, HALF, E1, E1, e1_cert())
    z = SumVector((HALF, 0), (HALF, 0))
    assert brute_slice_sup(Z, z, cert.slice, "exact") < cert.bound


def test_combine_non_deltak(l2):
    Z = SumSpace(l2, l2, LINF)
    cert = combine_non_deltak_certificates(Z, 2, e1_cert(2), 2, e1_cert(2))
    assert cert.trace["lambda"] == HALF and cert.alpha == F(1, 4)
    assert cert.f == SumVector((HALF, 0), (HALF, 0))
    assert brute_slice_sup(Z, SumVector(E1, E1), cert.slice) <= F(3, 2) + 1e-9
    a = NonDeltaCertificate(E1, F(1, 10), F(1, 2), 2)
    b = NonDeltaCertificate(E1, F(1, 5), F(1, 2), 2)
    cert = combine_non_deltak_certificates(Z, 2, a, 2, b)
    assert cert.trace["lambda"] == F(2, 3) and cert.alpha == F(2, 15)
    with pytest.raises(ConjugateMismatch):
        combine_non_deltak_certificates(Z, 3, e1_cert(3), 2, e1_cert(2))


# Delta_k points --------------------------------------------------------------------

def test_deltak_example(c01, l2, one):
    Z = SumSpace(l2, c01, L1)
    yo = daugavet_point(c01, one)
    f = SumVector(E1, delta(HALF))
    w = deltak_witness_l1(Z, 2, E1, yo, SliceSpec(f, F(1, 10)), F(1, 5))
    assert w.u.x == (0, 0) and c01.pair(delta(HALF), w.u.y) > F(8, 10)
    z = SumVector((HALF, 0), PLFunction.constant(HALF))
    assert Z.norm(Z.sub(z, w.u)) >= F(9, 5)
    assert w.alpha == F(1, 5)


def test_deltak_errors(c01, l2, one):
    Z = SumSpace(l2, c01, L1)
    yo = daugavet_point(c01, one)
    # (0, delta_1/2) takes the value 1/2 on z, outside any slice of width 1/10
    f = SumVector((0, 0), delta(HALF))
    with pytest.raises(SliceDoesNotContainPoint):
        deltak_witness_l1(Z, 2, E1, yo, SliceSpec(f, F(1, 10)), F(1, 5))


@pytest.mark.parametrize("k", [2, 4])
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_deltak_property(k, seed):
    X, Y = FiniteDim(2, 2), C01PL()
    Z = SumSpace(X, Y, L1)
    zp = deltak_point(Z, k, E1, daugavet_point(Y, Y.unit_vector()))
    sl = slice_containing(Z, zp.vector, make_rng(seed))
    w = zp.witness(sl, F(1, 10))
    assert w.alpha == k * sl.alpha
    assert check_witness(Z, zp.vector, SliceSpec(sl.f, k * sl.alpha), F(1, 10), w.u)


def test_infty_delta(c01, l2, one):
    inner = SumSpace(l2, c01, L1)
    yo = daugavet_point(c01, one)
    zx = deltak_point(inner, 2, E1, yo)
    Z = SumSpace(inner, inner, LINF)
    dp = delta_point_infty(Z, 2, 2, zx, zx)
    rng = make_rng(2)
    for _ in range(10):
        sl = slice_containing(Z, dp.vector, rng)
        w = infty_delta_witness(Z, 2, 2, zx, zx, sl, F(1, 10))
        assert check_witness(Z, dp.vector, sl, F(1, 10), w.u)
    with pytest.raises(ConjugateMismatch):
        delta_point_infty(Z, 3, 2, zx, zx)


def test_infty_delta_routes_to_y_when_norming(c01, l2, one):
    inner = SumSpace(l2, c01, L1)
    zx = deltak_point(inner, 2, E1, daugavet_point(c01, one))
    Z = SumSpace(inner, inner, LINF)
    gy = inner.norming_functional(zx.vector)
    f = SumVector(inner.zero_functional(), gy)
    w = infty_delta_witness(Z, 2, 2, zx, zx, SliceSpec(f, F(1, 10)), F(1, 10))
    assert w.trace["branch"] == "Y"
    w2 = infty_delta_witness(Z, 2, 2, zx, zx, SliceSpec(f, F(1, 10)), 2)
    assert Z.pair(f, w2.u) > F(9, 10)


# index arithmetic ------------------------------------------------------------------

def test_conjugate_examples():
    assert conjugate_pair_exists(2, 2) == (2, 2)
    assert conjugate_pair_exists(F(3, 2), 3) == (F(3, 2), 3)
    assert conjugate_pair_exists(3, 3) is None
    assert conjugate_pair_exists(float("inf"), 2) is None
    with pytest.raises(DomainError):
        conjugate_pair_exists(1, 2)


def test_index_set():
    s = DeltaIndexSet(F(3, 2))
    assert s.contains(2) and s.contains(F(3, 2)) and not s.contains(F(5, 4))
    assert not DeltaIndexSet(float("inf")).contains(10 ** 9)


@given(st.fractions(min_value=1, max_value=10, max_denominator=50).filter(lambda v: v > 1),
       st.fractions(min_value=1, max_value=10, max_denominator=50).filter(lambda v: v > 1))
def test_conjugate_property(a, b):
    pair = conjugate_pair_exists(a, b)
    assert (pair is not None) == (1 / a + 1 / b >= 1)
    if pair is not None:
        p, q = pair
        assert p >= a and q >= b and 1 / p + 1 / q == 1
