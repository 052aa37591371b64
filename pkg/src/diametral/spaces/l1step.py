"""Step functions on [0, 1] with the integral norm; functionals are step
functions with the sup norm."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DomainError, InfeasibleMesh
from ..numbers import sign, to_json, to_number
from .base import Chart, DeskSpace, DiametralWitness, SliceSpec

SCAN_CAP = 64


@dataclass(frozen=True)
class StepFunction:
    breaks: tuple
    heights: tuple

    def __post_init__(self):
        if len(self.breaks) != len(self.heights) + 1 or not self.heights:
            raise DomainError("need len(breaks) == len(heights) + 1")
        if self.breaks[0] != 0 or self.breaks[-1] != 1:
            raise DomainError("breaks must span [0, 1]")
        if any(b <= a for a, b in zip(self.breaks, self.breaks[1:])):
            raise DomainError("breaks must be strictly increasing")

    @classmethod
    def make(cls, breaks, heights) -> "StepFunction":
        return cls(tuple(Fraction(b) for b in breaks), tuple(heights))

    @classmethod
    def indicator(cls, lo, hi, height=Fraction(1)) -> "StepFunction":
        lo, hi = Fraction(lo), Fraction(hi)
        bs, hs = [Fraction(0)], []
        if lo > 0:
            bs.append(lo)
            hs.append(Fraction(0))
        bs.append(hi)
        hs.append(height)
        if hi < 1:
            bs.append(Fraction(1))
            hs.append(Fraction(0))
        return cls(tuple(bs), tuple(hs))

    def at(self, s):
        """Height on the cell containing ``s`` (right-continuous, last cell closed)."""
        i = min(bisect.bisect_right(self.breaks, s) - 1, len(self.heights) - 1)
        return self.heights[i]

    def cells(self):
        return zip(self.breaks, self.breaks[1:], self.heights)


def _refine(*fs):
    return sorted(set().union(*(f.breaks for f in fs)))


class L1Step(DeskSpace):
    daugavet_oracle = True
    name = "L1-Step"

    def __init__(self, max_level: int = 60, chart_level: int = 4):
        self.max_level = max_level
        self.chart_level = chart_level

    def to_spec(self):
        return {"kind": "l1step"}

    def norm(self, v):
        return sum((abs(h) * (b - a) for a, b, h in v.cells()), Fraction(0))

    def dual_norm(self, f):
        return max(abs(h) for h in f.heights)

    def pair(self, f, v):
        bs = _refine(f, v)
        return sum((f.at(a) * v.at(a) * (b - a) for a, b in zip(bs, bs[1:])), Fraction(0))

    def lincomb(self, a, u, b, v):
        bs = _refine(u, v)
        return StepFunction(tuple(bs), tuple(a * u.at(s) + b * v.at(s) for s in bs[:-1]))

    def zero(self):
        return StepFunction((Fraction(0), Fraction(1)), (Fraction(0),))

    def unit_vector(self):
        return StepFunction((Fraction(0), Fraction(1)), (Fraction(1),))

    def scale_functional(self, t, f):
        return StepFunction(f.breaks, tuple(t * h for h in f.heights))

    def norming_functional(self, x):
        if self.norm(x) == 0:
            raise DomainError("zero vector has no norming functional")
        return StepFunction(x.breaks, tuple(Fraction(sign(h)) for h in x.heights))

    def norming_vector(self, f):
        m = self.dual_norm(f)
        if m == 0:
            return self.unit_vector()
        a, b, h = next(c for c in f.cells() if abs(c[2]) == m)
        return StepFunction.indicator(a, b, Fraction(sign(h)) / (b - a))

    def daugavet_witness(self, x, slice_: SliceSpec, eps) -> DiametralWitness:
        """``u = sign * chi_I / |I|`` on the leftmost dyadic ``I`` inside a cell
        where ``|f|`` attains its maximum, refined until ``||x - u|| >= 2 - eps``."""
        f, alpha = slice_.f, slice_.alpha
        m = self.dual_norm(f)
        top = [(a, b, sign(h)) for a, b, h in f.cells() if abs(h) == m]
        for level in range(self.max_level + 1):
            h = Fraction(1, 2 ** level)
            scanned = 0
            for a, b, sg in top:
                for i in range(math.ceil(a / h), math.floor(b / h)):
                    if scanned >= SCAN_CAP:
                        break
                    scanned += 1
                    u = StepFunction.indicator(i * h, (i + 1) * h, Fraction(sg) / h)
                    dist = self.norm(self.sub(x, u))
                    if dist >= 2 - eps:
                        trace = {"interval": (i * h, (i + 1) * h), "level": level}
                        return DiametralWitness(u, self.pair(f, u), dist, eps, alpha, trace)
        raise InfeasibleMesh(f"no dyadic interval down to level {self.max_level} for eps={eps}")

    def chart(self, vectors=(), functionals=()) -> Chart:
        bs = {Fraction(i, 2 ** self.chart_level) for i in range(2 ** self.chart_level + 1)}
        for v in list(vectors) + list(functionals):
            bs.update(v.breaks)
        bs = tuple(sorted(bs))
        lens = np.array([float(b - a) for a, b in zip(bs, bs[1:])])
        n = len(lens)

        def encode(v):
            return np.array([float(v.at(a)) for a in bs[:-1]])

        def decode(arr):
            return StepFunction(bs, tuple(Fraction(float(a)) for a in arr))

        def norms(arr):
            return np.abs(arr) @ lens

        def weights(f):
            return encode(f) * lens

        def sample(rng, k):
            out = rng.standard_normal((k, n))
            half = k // 2
            spikes = np.zeros((half, n))
            idx = rng.integers(0, n, size=half)
            spikes[np.arange(half), idx] = rng.choice([-1.0, 1.0], size=half)
            out[:half] = spikes
            return out / (np.abs(out) @ lens)[:, None]

        return Chart(n, encode, decode, norms, weights, sample)

    def vector_to_json(self, v):
        return {"breaks": to_json(v.breaks), "heights": to_json(v.heights)}

    def vector_from_json(self, data):
        return StepFunction.make([to_number(b) for b in data["breaks"]],
                                 [to_number(h) for h in data["heights"]])

    functional_to_json = vector_to_json
    functional_from_json = vector_from_json
