"""Daugavet points of absolute sums: building them, transferring them back to
the components, and combining certificates that rule them out."""

from __future__ import annotations

from fractions import Fraction

from ..errors import (DomainError, MissingOracle, NotAOH, NotApplicable, VerificationFailed,
                      WidthTooLarge, ZeroComponent)
from ..norm2 import AbsoluteNorm
from ..numbers import close
from ..spaces.base import DiametralWitness, NonDeltaCertificate, SliceSpec, check_witness
from .points import OraclePoint, as_oracle_point, vector_of
from .space import SumSpace, SumVector


def _half(x):
    return x / 2 if not isinstance(x, int) else Fraction(x, 2)


def aoh_daugavet_point(N: AbsoluteNorm, X, Y, x, y, *, a=None, b=None, pair=None) -> OraclePoint:
    """``(a x, b y)`` in ``X (+)_N Y`` with a witness oracle.

    ``x`` and ``y`` are unit vectors, or :class:`OraclePoint` objects when the
    model itself has no oracle.  By default ``(a, b)`` is the classifier's
    pair.  A caller may pass ``pair`` (checked against (**)), or for
    ``N = l_inf`` one free coordinate ``b`` (with ``a = 1``) or ``a``.
    """
    cls = N.classify()
    if not cls.is_aoh:
        raise NotAOH(f"{N.name} has property (alpha); its sums have no Daugavet points")
    if N.is_linf and (a is not None or b is not None):
        if a is not None and b is not None:
            raise DomainError("for l_inf give only one of a, b")
        if b is not None:
            if not 0 <= b <= 1:
                raise DomainError("b must lie in [0, 1]")
            a = Fraction(1)
        else:
            if not 0 <= a <= 1:
                raise DomainError("a must lie in [0, 1]")
            b = Fraction(1)
    elif a is not None or b is not None:
        raise DomainError("a free coefficient is only allowed for l_inf sums")
    elif pair is not None:
        a, b = pair
        if not N.satisfies_star_star(a, b):
            raise DomainError(f"{pair} does not satisfy (**) for {N.name}")
    else:
        a, b = cls.pair.a, cls.pair.b

    xv, yv = vector_of(x), vector_of(y)
    if not close(X.norm(xv), 1) or not close(Y.norm(yv), 1):
        raise DomainError("x and y must be unit vectors")
    xo, yo = as_oracle_point(X, x), as_oracle_point(Y, y)

    if N.is_linf:
        use_x = xo if a == 1 else None
        use_y = yo if b == 1 else None
        if use_x is None and use_y is None:
            raise MissingOracle("an l_inf sum needs an oracle on a coordinate with coefficient 1")
    else:
        use_x = xo if a != 0 else None
        use_y = yo if b != 0 else None
        if a != 0 and xo is None:
            raise MissingOracle(f"{X.name} point needs a Daugavet oracle")
        if b != 0 and yo is None:
            raise MissingOracle(f"{Y.name} point needs a Daugavet oracle")

    Z = SumSpace(X, Y, N)
    vec = SumVector(X.scale(a, xv), Y.scale(b, yv))
    info = {"pair": (a, b), "x": use_x, "y": use_y}

    def fn(slice_, eps):
        return sum_daugavet_witness(Z, point, slice_, eps)

    point = OraclePoint(Z, vec, "daugavet", 1, fn, info)
    return point


def _component(space, part, g, alpha, delta):
    """``u`` with ``g(u) >= (1 - alpha/2) ||g||`` and, given an oracle,
    ``||x - u|| >= 2 - delta``."""
    if part is None:
        return space.norming_vector(g), "norming"
    ng = space.dual_norm(g)
    if ng == 0:
        # every ball point qualifies; still ask for one far from x
        sl = SliceSpec(space.norming_functional(part.vector), Fraction(1))
    else:
        sl = SliceSpec(space.scale_functional(1 / ng, g), _half(alpha))
    return part.witness(sl, delta).u, "oracle"


def sum_daugavet_witness(Z: SumSpace, point: OraclePoint, slice_: SliceSpec, eps) -> DiametralWitness:
    """Witness for a point built by :func:`aoh_daugavet_point`."""
    f, alpha = slice_.f, slice_.alpha
    z = point.vector
    if not close(Z.dual_norm(f), 1):
        raise DomainError("slice functional must have norm one")
    if eps >= 2:
        u = Z.norming_vector(f)
        return DiametralWitness(u, Z.pair(f, u), Z.norm(Z.sub(z, u)), eps, alpha,
                                {"construction": "norming"})
    N = Z.N
    delta = eps / (2 * N(1, 1))
    a, b = point.info["pair"]
    u, how_u = _component(Z.X, point.info["x"], f.x, alpha, delta)
    v, how_v = _component(Z.Y, point.info["y"], f.y, alpha, delta)
    nx, ny = Z.X.dual_norm(f.x), Z.Y.dual_norm(f.y)
    kl = N.find_kl((a, b), (nx, ny))
    w = SumVector(Z.X.scale(kl.a, u), Z.Y.scale(kl.b, v))
    trace = {"delta": delta, "kl": (kl.a, kl.b), "pair": (a, b), "parts": (how_u, how_v)}
    if not check_witness(Z, z, slice_, eps, w):
        raise VerificationFailed(f"sum witness failed its recheck: {trace}")
    return DiametralWitness(w, Z.pair(f, w), Z.norm(Z.sub(z, w)), eps, alpha, trace)


def component_witness_from_sum(Z: SumSpace, point: OraclePoint, which: str, slice_: SliceSpec,
                               eps) -> DiametralWitness:
    """Daugavet witness for the normalised component ``x / ||x||`` of a sum
    Daugavet point, obtained by querying the sum oracle on ``(x*, 0)``."""
    if which not in ("X", "Y"):
        raise DomainError("which must be 'X' or 'Y'")
    C = Z.X if which == "X" else Z.Y
    O = Z.Y if which == "X" else Z.X
    zc = point.vector.x if which == "X" else point.vector.y
    zo = point.vector.y if which == "X" else point.vector.x
    nc = C.norm(zc)
    if nc == 0:
        raise ZeroComponent(f"the {which} component is zero")
    f, alpha = slice_.f, slice_.alpha
    if not close(C.dual_norm(f), 1):
        raise DomainError("slice functional must have norm one")
    N = Z.N
    lifted = Z.embed_functional(which, f)
    if N.is_linf:
        other = O.norm(zo)
        if other >= 1:
            raise NotApplicable("both components have norm one; only a disjunction holds")
        delta = min(eps, (1 - other) / 2)
        width = alpha
    else:
        delta = min(N.flatness_delta(nc * eps / 2), eps / 2, alpha)
        while (1 - delta) * N(1, 1) <= 1:
            delta = delta / 2
        width = delta
    w = point.witness(SliceSpec(lifted, width), delta)
    u = w.u.x if which == "X" else w.u.y
    target = C.scale(1 / nc, zc)
    trace = {"delta": delta, "width": width, "sum_trace": w.trace}
    nu = C.norm(u)
    for cand, label in ((C.scale(1 / nu, u), "normalised"), (u, "raw")) if nu > 0 else ((u, "raw"),):
        if check_witness(C, target, slice_, eps, cand):
            trace["form"] = label
            return DiametralWitness(cand, C.pair(f, cand), C.norm(C.sub(target, cand)), eps,
                                    alpha, trace)
    raise VerificationFailed(f"component witness failed its recheck: {trace}")


def combine_non_daugavet_certificates(Z: SumSpace, certX: NonDeltaCertificate,
                                      certY: NonDeltaCertificate) -> NonDeltaCertificate:
    """From slices of ``X`` and ``Y`` avoiding ``Delta_eps(x)``, ``Delta_eps(y)``,
    a slice of ``X (+)_inf Y`` avoiding ``Delta_{eps - alpha}(x, y)``.

    Both inputs are shrunk to the common ``alpha`` and ``eps`` (smaller
    values keep them valid).
    """
    if not Z.N.is_linf:
        raise DomainError("certificates combine on l_inf sums only")
    alpha = min(certX.alpha, certY.alpha)
    eps = min(certX.eps, certY.eps)
    if alpha >= eps:
        raise WidthTooLarge(f"need alpha < eps, got alpha={alpha}, eps={eps}")
    f = SumVector(Z.X.scale_functional(Fraction(1, 2), certX.f),
                  Z.Y.scale_functional(Fraction(1, 2), certY.f))
    trace = {"rule": "half-sum", "alpha": alpha, "eps": eps,
             "inputs": (certX.trace, certY.trace)}
    return NonDeltaCertificate(f, _half(alpha), eps - alpha, 1, False, trace)
