"""Seeded random slices with rational data, for demos and tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..spaces import C01PL, FiniteDim, L1Step, PointMasses, SliceSpec, StepFunction
from ..sums import SumSpace, SumVector


def _q(rng, lo, hi, den):
    return Fraction(int(rng.integers(lo, hi + 1)), den)


def _nonzero(rng, den=8):
    v = 0
    while v == 0:
        v = int(rng.integers(-den, den + 1))
    return Fraction(v, den)


def random_functional(space, rng):
    """A random norm-one functional, exact wherever the dual norm allows."""
    if isinstance(space, C01PL):
        m = int(rng.integers(1, 4))
        items = [(Fraction(int(rng.integers(0, 65)), 64), _nonzero(rng)) for _ in range(m)]
        f = PointMasses.make(items)
        if not f.points:
            f = PointMasses.make([(Fraction(1, 2), Fraction(1))])
        return space.normalized_functional(f)
    if isinstance(space, L1Step):
        inner = sorted({Fraction(int(i), 16) for i in rng.integers(1, 16, size=int(rng.integers(0, 4)))})
        breaks = [Fraction(0)] + inner + [Fraction(1)]
        heights = [_nonzero(rng) for _ in breaks[:-1]]
        return space.normalized_functional(StepFunction(tuple(breaks), tuple(heights)))
    if isinstance(space, FiniteDim):
        if space.p == 2 and space.n == 2:
            # rational points of the circle
            t = _q(rng, -16, 16, 8)
            c = ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))
            return c if rng.random() < 0.5 else (c[1], c[0])
        v = tuple(_q(rng, -8, 8, 8) for _ in range(space.n))
        if all(c == 0 for c in v):
            v = space.basis(0)
        return space.normalized_functional(v)
    if isinstance(space, SumSpace):
        N = space.N
        r = rng.random()
        if r < 0.15:
            fx, fy = random_functional(space.X, rng), space.Y.zero_functional()
            c, d = Fraction(1), Fraction(0)
        elif r < 0.3:
            fx, fy = space.X.zero_functional(), random_functional(space.Y, rng)
            c, d = Fraction(0), Fraction(1)
        else:
            fx, fy = random_functional(space.X, rng), random_functional(space.Y, rng)
            c, d = _q(rng, 1, 16, 16), _q(rng, 1, 16, 16)
        s = N.dual_eval(c, d)
        c, d = c / s, d / s
        return SumVector(space.X.scale_functional(c, fx), space.Y.scale_functional(d, fy))
    raise TypeError(f"no random functionals for {space.name}")


def random_slice(space, rng, max_alpha=Fraction(1, 2)) -> SliceSpec:
    alpha = Fraction(int(rng.integers(1, 101)), 100) * max_alpha
    return SliceSpec(random_functional(space, rng), alpha)


def slice_containing(space, point, rng, max_extra=Fraction(3, 10)) -> SliceSpec:
    """A random slice with ``f(point) > 1 - alpha``."""
    f = random_functional(space, rng)
    fz = space.pair(f, point)
    extra = Fraction(int(rng.integers(1, 101)), 100) * max_extra
    return SliceSpec(f, 1 - fz + extra)


def make_rng(seed: int):
    return np.random.default_rng(seed)


__all__ = ["make_rng", "random_functional", "random_slice", "slice_containing"]
