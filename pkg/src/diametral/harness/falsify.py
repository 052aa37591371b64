"""Randomised search for points that break a certificate.

A certificate claims every ball point of ``S(B, f, k alpha)`` is closer than
``2 - eps`` to ``x``.  The falsifier looks for one that is not.  Finding none
means "unfalsified", never "proved".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from ..errors import EmptySlice
from ..spaces.base import NonDeltaCertificate
from ..spaces.search import search_sup


@dataclass(frozen=True)
class FalsifierBudget:
    samples: int = 100_000
    ascent_steps: int = 200
    seed: int = 0


@dataclass(frozen=True)
class Violation:
    u: Any
    distance: Any
    bound: Any


@dataclass(frozen=True)
class FalsifierOutcome:
    violation: Optional[Violation]
    best: float
    evaluations: int

    @property
    def verdict(self) -> str:
        return "violated" if self.violation is not None else "unfalsified"


def run_falsifier(space, x, cert: NonDeltaCertificate,
                  budget: FalsifierBudget = FalsifierBudget()) -> FalsifierOutcome:
    sl = cert.slice
    if sl.alpha <= 0:
        return FalsifierOutcome(None, float("-inf"), 0)
    level = 1 - sl.alpha
    if space.dual_norm(cert.f) <= level:
        return FalsifierOutcome(None, float("-inf"), 0)
    chart = space.chart([x], [cert.f])
    bound = cert.bound
    try:
        res = search_sup(chart, chart.encode(x), chart.weights(cert.f), float(level),
                         chart.encode(space.norming_vector(cert.f)),
                         samples=budget.samples, ascent_steps=budget.ascent_steps,
                         seed=budget.seed, target=float(bound))
    except EmptySlice:
        return FalsifierOutcome(None, float("-inf"), 0)
    violation = None
    if res.value >= float(bound):
        # only report what survives an exact recheck
        u = chart.decode(res.u)
        dist = space.norm(space.sub(x, u))
        if space.norm(u) <= 1 and space.pair(cert.f, u) > level and dist >= bound:
            violation = Violation(u, dist, bound)
    return FalsifierOutcome(violation, res.value, res.evaluations)


def falsify(space, x, cert: NonDeltaCertificate,
            budget: FalsifierBudget = FalsifierBudget()) -> Optional[Violation]:
    """A ball point of the certificate's slice at distance ``>= 2 - eps``, if found."""
    return run_falsifier(space, x, cert, budget).violation
