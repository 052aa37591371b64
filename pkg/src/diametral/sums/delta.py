"""Delta and Delta_k points of absolute sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import (BEqualsOne, ConjugateMismatch, DomainError, SliceDoesNotContainPoint,
                      VerificationFailed)
from ..numbers import INF, close, is_exact
from ..spaces.base import DiametralWitness, NonDeltaCertificate, SliceSpec, check_witness
from .points import OraclePoint
from .space import SumSpace, SumVector

CONJ_TOL = 1e-12


def _check_conjugate(p, q):
    if p <= 1 or q <= 1:
        raise ConjugateMismatch(f"need p, q > 1, got {p}, {q}")
    gap = 1 / Fraction(p) + 1 / Fraction(q) - 1 if is_exact(p, q) else 1 / p + 1 / q - 1
    if abs(gap) > (0 if is_exact(p, q) else CONJ_TOL):
        raise ConjugateMismatch(f"1/{p} + 1/{q} != 1")


# lifting non-Delta certificates -----------------------------------------------

def lift_non_delta_certificate(Z: SumSpace, a, b, x, y, certX: NonDeltaCertificate,
                               margin=None) -> NonDeltaCertificate:
    """Lift a certificate that ``x`` is not a Delta-point in ``X`` to one that
    ``(a x, b y)`` is not a Delta-point in ``Z = X (+)_N Y``.

    ``margin`` caps ``delta`` so that ``b < 1 - delta``; it defaults to
    ``(1 - b) / 2``.
    """
    N, X, Y = Z.N, Z.X, Z.Y
    if b == 1:
        raise BEqualsOne("b = 1 is excluded; use the l_inf corner results instead")
    if not close(N(a, b), 1):
        raise DomainError(f"N{(a, b)} != 1")
    if not close(Y.norm(y), 1):
        raise DomainError("y must be a unit vector")
    alpha, eps = certX.alpha, certX.eps
    c, d = N.norming_dual(a, b)
    ys = Y.norming_functional(y)
    f = SumVector(X.scale_functional(c, certX.f), Y.scale_functional((1 - alpha) * d, ys))
    z = SumVector(X.scale(a, x), Y.scale(b, y))
    fz = Z.pair(f, z)
    if not fz > 1 - alpha:
        raise SliceDoesNotContainPoint("(a x, b y) is not in the lifted slice; is x in the input slice?")
    gamma = (alpha - (1 - fz)) / 2
    beta = min(a * eps, gamma * eps) / 2
    delta = N.flatness_delta(beta)
    cap = (1 - b) / 2 if margin is None else margin
    if not b < 1 - delta:
        delta = min(delta, cap)
    norm_f = Z.dual_norm(f)
    width = 1 - (1 - alpha + gamma) / norm_f
    f_hat = Z.scale_functional(1 / norm_f, f)
    trace = {"rule": "lift", "c": c, "d": d, "gamma": gamma, "beta": beta, "delta": delta,
             "raw_functional_norm": norm_f, "raw_width": alpha - gamma,
             "input": {"alpha": alpha, "eps": eps, "trace": certX.trace}}
    return NonDeltaCertificate(f_hat, width, delta, 1, True, trace)


# Delta_k points in l_1 sums ---------------------------------------------------

def _is_l1(N) -> bool:
    return N.exact and close(N(1, 1), 2)


def deltak_point(Z: SumSpace, k, x, y: OraclePoint) -> OraclePoint:
    """``z = ((1 - 1/k) x, y / k)`` in ``X (+)_1 Y`` as a Delta_k point."""
    if not _is_l1(Z.N):
        raise DomainError("the Delta_k construction lives in l_1 sums")
    if not k > 1:
        raise DomainError("need k > 1")
    z = SumVector(Z.X.scale(1 - 1 / Fraction(k) if is_exact(k) else 1 - 1 / k, x),
                  Z.Y.scale(1 / Fraction(k) if is_exact(k) else 1 / k, y.vector))

    def fn(slice_, eps):
        return deltak_witness_l1(Z, k, x, y, slice_, eps)

    return OraclePoint(Z, z, "delta", k, fn, {"x": x, "y": y})


def deltak_witness_l1(Z: SumSpace, k, x, y: OraclePoint, slice_: SliceSpec, eps) -> DiametralWitness:
    """Witness ``(0, v)`` in the slice widened by ``k`` for
    ``z = ((1 - 1/k) x, y / k)``; ``y`` carries a Delta (or Daugavet) oracle."""
    if not _is_l1(Z.N):
        raise DomainError("the Delta_k construction lives in l_1 sums")
    if y.k != 1:
        raise DomainError("y must carry a Delta (k = 1) oracle")
    X, Y = Z.X, Z.Y
    kk = Fraction(k) if is_exact(k) else k
    z = SumVector(X.scale(1 - 1 / kk, x), Y.scale(1 / kk, y.vector))
    f, alpha = slice_.f, slice_.alpha
    if not Z.pair(f, z) > 1 - alpha:
        raise SliceDoesNotContainPoint("z is not in the slice")
    thr = 1 - alpha * kk
    ny = Y.dual_norm(f.y)
    if ny > 0:
        sy = SliceSpec(Y.scale_functional(1 / ny, f.y), 1 - thr / ny)
    else:
        sy = SliceSpec(Y.norming_functional(y.vector), Fraction(2))
    v = y.witness(sy, eps).u
    w = SumVector(X.zero(), v)
    wide = slice_.widened(kk)
    trace = {"k": kk, "threshold": thr, "y_slice_width": sy.alpha}
    if not check_witness(Z, z, wide, eps, w):
        raise VerificationFailed(f"Delta_k witness failed its recheck: {trace}")
    return DiametralWitness(w, Z.pair(f, w), Z.norm(Z.sub(z, w)), eps, wide.alpha, trace)


# Delta points in l_inf sums ---------------------------------------------------

def infty_delta_witness(Z: SumSpace, p, q, x: OraclePoint, y: OraclePoint, slice_: SliceSpec,
                        eps) -> DiametralWitness:
    """Delta witness for ``(x, y)`` in ``X (+)_inf Y`` from a Delta_p oracle on
    ``x`` and a Delta_q oracle on ``y``."""
    _check_conjugate(p, q)
    if not Z.N.is_linf:
        raise DomainError("needs an l_inf sum")
    if x.k > p or y.k > q:
        raise DomainError(f"oracles are Delta_{x.k}, Delta_{y.k}; need indices <= {p}, {q}")
    X, Y = Z.X, Z.Y
    pt = SumVector(x.vector, y.vector)
    f, alpha = slice_.f, slice_.alpha
    if not Z.pair(f, pt) > 1 - alpha:
        raise SliceDoesNotContainPoint("(x, y) is not in the slice")
    if eps >= 2:
        u = Z.norming_vector(f)
        return DiametralWitness(u, Z.pair(f, u), Z.norm(Z.sub(pt, u)), eps, alpha,
                                {"construction": "norming"})
    nx, ny = X.dual_norm(f.x), Y.dual_norm(f.y)
    test = alpha + Y.pair(f.y, y.vector) - ny
    if test <= alpha / p:
        branch = "X"
        sl = (SliceSpec(X.scale_functional(1 / nx, f.x), alpha / (p * nx)) if nx > 0
              else SliceSpec(X.norming_functional(x.vector), Fraction(1)))
        w = SumVector(x.witness(sl, eps).u, Y.norming_vector(f.y))
    else:
        branch = "Y"
        sl = (SliceSpec(Y.scale_functional(1 / ny, f.y), alpha / (q * ny)) if ny > 0
              else SliceSpec(Y.norming_functional(y.vector), Fraction(1)))
        w = SumVector(X.norming_vector(f.x), y.witness(sl, eps).u)
    trace = {"branch": branch, "case_value": test, "component_width": sl.alpha}
    if not check_witness(Z, pt, slice_, eps, w):
        raise VerificationFailed(f"l_inf Delta witness failed its recheck: {trace}")
    return DiametralWitness(w, Z.pair(f, w), Z.norm(Z.sub(pt, w)), eps, alpha, trace)


def delta_point_infty(Z: SumSpace, p, q, x: OraclePoint, y: OraclePoint) -> OraclePoint:
    _check_conjugate(p, q)
    pt = SumVector(x.vector, y.vector)
    return OraclePoint(Z, pt, "delta", 1,
                       lambda s, e: infty_delta_witness(Z, p, q, x, y, s, e), {"p": p, "q": q})


def combine_non_deltak_certificates(Z: SumSpace, p, certX: NonDeltaCertificate, q,
                                    certY: NonDeltaCertificate) -> NonDeltaCertificate:
    """Non-Delta certificate on ``(x, y)`` in ``X (+)_inf Y`` from a non-Delta_p
    certificate on ``x`` and a non-Delta_q certificate on ``y``."""
    _check_conjugate(p, q)
    if not Z.N.is_linf:
        raise DomainError("needs an l_inf sum")
    for cert, idx in ((certX, p), (certY, q)):
        if cert.k < idx - CONJ_TOL:
            raise DomainError(f"a Delta_{idx} certificate is needed, got k = {cert.k}")
    a1, a2 = certX.alpha, certY.alpha
    eps = min(certX.eps, certY.eps)
    lam = q * a2 / (p * a1 + q * a2)
    alpha = lam * a1 + (1 - lam) * a2
    f = SumVector(Z.X.scale_functional(lam, certX.f), Z.Y.scale_functional(1 - lam, certY.f))
    trace = {"rule": "convex", "lambda": lam, "p": p, "q": q,
             "inputs": (certX.trace, certY.trace)}
    return NonDeltaCertificate(f, alpha, eps, 1, True, trace)


# index arithmetic -------------------------------------------------------------

@dataclass(frozen=True)
class DeltaIndexSet:
    """The point is a Delta_k point exactly for ``k >= a`` (never if ``a = inf``)."""

    a: object

    def __post_init__(self):
        if not self.a >= 1:
            raise DomainError("Delta index must be at least 1")

    def contains(self, k) -> bool:
        return self.a != INF and k >= self.a


def conjugate_pair_exists(a, b) -> Optional[tuple]:
    """Conjugate ``(p, q)`` with ``p >= a`` and ``q >= b``, or ``None``.

    Such a pair exists iff ``1/a + 1/b >= 1``; the one returned has the
    smallest ``p``, namely ``p = a``.
    """
    a = a.a if isinstance(a, DeltaIndexSet) else a
    b = b.a if isinstance(b, DeltaIndexSet) else b
    if not (a > 1 and b > 1):
        raise DomainError("indices must exceed 1")
    if a == INF or b == INF:
        return None
    if is_exact(a, b):
        a, b = Fraction(a), Fraction(b)
    if 1 / a + 1 / b < 1:
        return None
    return (a, a / (a - 1))
