"""Piecewise-linear functions on [0, 1] with the sup norm.

Functionals are finite signed sums of point evaluations, normed by their
total mass.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DomainError, InfeasibleMesh
from ..numbers import sign, to_json, to_number
from .base import Chart, DeskSpace, DiametralWitness, SliceSpec


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class PLFunction:
    knots: tuple
    values: tuple

    def __post_init__(self):
        if len(self.knots) != len(self.values) or len(self.knots) < 2:
            raise DomainError("need matching knots and values")
        if self.knots[0] != 0 or self.knots[-1] != 1:
            raise DomainError("knots must span [0, 1]")
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise DomainError("knots must be strictly increasing")

    @classmethod
    def make(cls, knots, values) -> "PLFunction":
        return cls(tuple(_frac(k) for k in knots), tuple(values))

    @classmethod
    def constant(cls, c) -> "PLFunction":
        return cls((Fraction(0), Fraction(1)), (c, c))

    def __call__(self, s):
        ks = self.knots
        i = bisect.bisect_right(ks, s) - 1
        if i >= len(ks) - 1:
            return self.values[-1]
        if ks[i] == s:
            return self.values[i]
        w = (s - ks[i]) / (ks[i + 1] - ks[i])
        return self.values[i] + w * (self.values[i + 1] - self.values[i])

    def sup(self):
        return max(abs(v) for v in self.values)


@dataclass(frozen=True)
class PointMasses:
    points: tuple
    weights: tuple

    @classmethod
    def make(cls, items) -> "PointMasses":
        acc = {}
        for s, w in items:
            s = _frac(s)
            if not 0 <= s <= 1:
                raise DomainError("point masses must sit in [0, 1]")
            acc[s] = acc.get(s, 0) + w
        pts = sorted(s for s, w in acc.items() if w != 0)
        return cls(tuple(pts), tuple(acc[s] for s in pts))

    def mass(self):
        return sum((abs(w) for w in self.weights), Fraction(0))


class C01PL(DeskSpace):
    """C[0, 1] restricted to piecewise-linear functions with rational knots."""

    daugavet_oracle = True
    name = "C01-PL"

    def __init__(self, start_level: int = 3, max_level: int = 40, chart_level: int = 4):
        self.start_level = start_level
        self.max_level = max_level
        self.chart_level = chart_level

    def to_spec(self):
        return {"kind": "c01"}

    def norm(self, v):
        return v.sup()

    def dual_norm(self, f):
        return f.mass()

    def pair(self, f, v):
        return sum((w * v(s) for s, w in zip(f.points, f.weights)), Fraction(0))

    def lincomb(self, a, u, b, v):
        ks = sorted(set(u.knots) | set(v.knots))
        return PLFunction(tuple(ks), tuple(a * u(s) + b * v(s) for s in ks))

    def zero(self):
        return PLFunction.constant(Fraction(0))

    def unit_vector(self):
        return PLFunction.constant(Fraction(1))

    def scale_functional(self, t, f):
        return PointMasses.make((s, t * w) for s, w in zip(f.points, f.weights))

    def zero_functional(self):
        return PointMasses((), ())

    def norming_functional(self, x):
        m = x.sup()
        if m == 0:
            raise DomainError("zero vector has no norming functional")
        i = next(i for i, v in enumerate(x.values) if abs(v) == m)
        return PointMasses((x.knots[i],), (Fraction(sign(x.values[i])),))

    def norming_vector(self, f):
        """Interpolate the signs of the point masses (constant at the ends)."""
        if not f.points:
            return self.unit_vector()
        return _sign_interpolant(f)

    def daugavet_witness(self, x, slice_: SliceSpec, eps) -> DiametralWitness:
        f, alpha = slice_.f, slice_.alpha
        g = self.norming_vector(f)
        if eps >= 2:
            return self._witness(x, f, g, eps, alpha, {"construction": "norming"})
        theta = 1 - _frac(eps) / 2
        near = _level_set(x, theta)
        support = f.points
        for level in range(self.start_level, self.max_level + 1):
            h = Fraction(1, 2 ** level)
            cap = 4 * len(support) + 8
            for e0, e1 in near:
                first = math.floor(e0 / h)
                last = min(math.floor(e1 / h), 2 ** level - 1)
                for i in range(first, min(last, first + cap) + 1):
                    lo, hi = i * h, (i + 1) * h
                    pad_lo, pad_hi = max(lo - h, Fraction(0)), min(hi + h, Fraction(1))
                    j = bisect.bisect_left(support, pad_lo)
                    if j < len(support) and support[j] <= pad_hi:
                        continue
                    star = max(lo, e0)
                    sig = sign(x(star))
                    u = _bump(g, lo, hi, pad_lo, pad_hi, -sig)
                    trace = {"construction": "bump", "interval": (lo, hi),
                             "point": star, "level": level}
                    return self._witness(x, f, u, eps, alpha, trace)
        raise InfeasibleMesh(f"no dyadic interval down to level {self.max_level} for eps={eps}")

    def _witness(self, x, f, u, eps, alpha, trace):
        return DiametralWitness(u, self.pair(f, u), self.norm(self.sub(x, u)), eps, alpha, trace)

    def chart(self, vectors=(), functionals=()) -> Chart:
        mesh = {Fraction(i, 2 ** self.chart_level) for i in range(2 ** self.chart_level + 1)}
        for v in vectors:
            mesh.update(v.knots)
        for f in functionals:
            mesh.update(f.points)
        mesh = tuple(sorted(mesh))
        index = {s: i for i, s in enumerate(mesh)}
        n = len(mesh)

        def encode(v):
            return np.array([float(v(s)) for s in mesh])

        def decode(arr):
            return PLFunction(mesh, tuple(Fraction(float(a)) for a in arr))

        def norms(arr):
            return np.max(np.abs(arr), axis=-1)

        def weights(f):
            w = np.zeros(n)
            for s, m in zip(f.points, f.weights):
                w[index[s]] += float(m)
            return w

        def sample(rng, k):
            out = rng.standard_normal((k, n))
            third = k // 3
            out[:third] = rng.choice([-1.0, 1.0], size=(third, n))
            out[third:2 * third] = np.cumsum(out[third:2 * third], axis=1)
            return out / np.max(np.abs(out), axis=1, keepdims=True)

        return Chart(n, encode, decode, norms, weights, sample)

    def vector_to_json(self, v):
        return {"knots": to_json(list(zip(v.knots, v.values)))}

    def vector_from_json(self, data):
        ks = [(to_number(s), to_number(v)) for s, v in data["knots"]]
        return PLFunction.make([s for s, _ in ks], [v for _, v in ks])

    def functional_to_json(self, f):
        return {"masses": to_json(list(zip(f.points, f.weights)))}

    def functional_from_json(self, data):
        return PointMasses.make((to_number(s), to_number(w)) for s, w in data["masses"])


def _sign_interpolant(f: PointMasses) -> PLFunction:
    pts = list(f.points)
    vals = [Fraction(sign(w)) for w in f.weights]
    if pts[0] != 0:
        pts.insert(0, Fraction(0))
        vals.insert(0, vals[0])
    if pts[-1] != 1:
        pts.append(Fraction(1))
        vals.append(vals[-1])
    return PLFunction(tuple(pts), tuple(vals))


def _bump(g: PLFunction, lo, hi, pad_lo, pad_hi, level) -> PLFunction:
    """``g`` overwritten by the constant ``level`` on ``[lo, hi]``.

    The transitions live on ``[pad_lo, lo]`` and ``[hi, pad_hi]``.
    """
    ks = set(g.knots) | {pad_lo, lo, hi, pad_hi}
    ks = sorted(k for k in ks if not (pad_lo < k < lo or hi < k < pad_hi))
    vals = [level if lo <= k <= hi else g(k) for k in ks]
    return PLFunction(tuple(ks), tuple(vals))


def _level_set(x: PLFunction, theta):
    """Sorted disjoint closed intervals where ``|x| >= theta``."""
    pieces = []
    for (s0, v0), (s1, v1) in zip(zip(x.knots, x.values), zip(x.knots[1:], x.values[1:])):
        for sg in (1, -1):
            a, b = sg * v0, sg * v1  # want a + (b - a) w >= theta on w in [0, 1]
            if a >= theta and b >= theta:
                pieces.append((s0, s1))
            elif a >= theta:
                w = (theta - a) / (b - a)
                pieces.append((s0, s0 + w * (s1 - s0)))
            elif b >= theta:
                w = (theta - a) / (b - a)
                pieces.append((s0 + w * (s1 - s0), s1))
    pieces.sort()
    merged = []
    for a, b in pieces:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged
