"""Witness oracles and the brute-force slice supremum."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DomainError, EmptySlice, NoOracle, NotFound
from ..numbers import close
from .base import DiametralWitness, NonDeltaCertificate, SliceSpec, check_witness
from .finite import FiniteDim
from .search import search_sup

MARGIN = 1e-6


def daugavet_witness(space, x, slice_: SliceSpec, eps) -> DiametralWitness:
    """``u`` in the slice with ``||x - u|| >= 2 - eps``, via the space's oracle."""
    if not space.daugavet_oracle:
        raise NoOracle(f"{space.name} has no Daugavet witness oracle")
    if not close(space.norm(x), 1):
        raise DomainError("x must lie on the unit sphere")
    if not close(space.dual_norm(slice_.f), 1):
        raise DomainError("slice functional must have norm one")
    if not 0 < eps:
        raise DomainError("eps must be positive")
    w = space.daugavet_witness(x, slice_, eps)
    assert check_witness(space, x, slice_, eps, w.u)
    return w


def norming_functional(space, x):
    return space.norming_functional(x)


def brute_slice_sup(space, x, slice_: SliceSpec, method: str = "auto", *,
                    samples: int = 20_000, seed: int = 0) -> float:
    """``sup{||x - u|| : u in S(B, f, alpha)}``.

    ``method`` is ``"exact"`` (vertex enumeration, closed forms, l_inf-sum
    reduction), ``"search"`` (grid or sampling plus ascent; a lower bound) or
    ``"auto"`` (exact when available).
    """
    f, alpha = slice_.f, slice_.alpha
    if alpha <= 0:
        raise EmptySlice("zero-width slice")
    level = 1 - alpha
    if method in ("auto", "exact"):
        try:
            val = space.sup_distance(x, f, level)
        except NotImplementedError:
            if method == "exact":
                raise
        else:
            if val == -math.inf:
                raise EmptySlice("no ball point in the slice")
            return float(val)
    if isinstance(space, FiniteDim) and space.n == 2:
        val = space.angle_scan_sup(x, f, level)
        if val == -math.inf:
            raise EmptySlice("no ball point in the slice")
        return float(val)
    if space.dual_norm(f) <= level:
        raise EmptySlice("no ball point in the slice")
    chart = space.chart([x], [f])
    res = search_sup(chart, chart.encode(x), chart.weights(f), level,
                     chart.encode(space.norming_vector(f)), samples=samples, seed=seed)
    return res.value


def non_delta_certificate(space, x, k=1, f=None, margin=MARGIN) -> NonDeltaCertificate:
    """Search a certificate that ``x`` is not a Delta_k-point.

    ``f`` defaults to the norming functional of ``x``.  The width ``alpha`` is
    the balance point ``alpha = eps(alpha)`` found by bisection, where
    ``eps(alpha) = 2 - margin - sup{||x - u|| : u in S(B, f, k alpha)}``.
    """
    if not space.brute_oracle:
        raise NoOracle(f"{space.name} has no exact slice oracle")
    if f is None:
        f = space.norming_functional(x)
    fx = space.pair(f, x)

    def eps_of(a):
        return 2 - margin - brute_slice_sup(space, x, SliceSpec(f, k * a), "exact")

    ladder = [Fraction(1, 2 ** j) for j in range(0, 24)]
    ladder = [a for a in ladder if fx > 1 - a and k * a <= 2]
    good = [a for a in ladder if eps_of(a) > 0]
    if not good:
        raise NotFound("every tested slice reaches distance 2")
    balanced = [a for a in good if eps_of(a) >= a]
    if not balanced:
        alpha = good[-1]
    else:
        lo = balanced[0]
        hi = min(2 * lo, Fraction(2) / k)
        if fx <= 1 - hi:
            hi = lo
        for _ in range(30):
            if hi - lo <= 0:
                break
            mid = (lo + hi) / 2
            if eps_of(mid) >= mid:
                lo = mid
            else:
                hi = mid
        alpha = lo
    eps = eps_of(alpha)
    trace = {"search": "balanced", "sup": 2 - margin - eps, "margin": margin}
    return NonDeltaCertificate(f, alpha, eps, k, True, trace)
