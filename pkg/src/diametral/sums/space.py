"""The absolute sum ``X (+)_N Y`` as a desk space in its own right."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import DomainError
from ..norm2 import AbsoluteNorm
from ..spaces.base import Chart, DeskSpace

REDUCE_GRID = 96
REDUCE_ROUNDS = 40


@dataclass(frozen=True)
class SumVector:
    x: Any
    y: Any

    def __iter__(self):
        return iter((self.x, self.y))


# functionals are pairs as well
SumFunctional = SumVector


class SumSpace(DeskSpace):
    """``Z = X (+)_N Y`` with ``||(x, y)|| = N(||x||, ||y||)``.

    Functionals are pairs ``(x*, y*)`` normed by the dual norm ``N*``.
    Sums of sums are allowed.
    """

    def __init__(self, X: DeskSpace, Y: DeskSpace, N: AbsoluteNorm):
        self.X = X
        self.Y = Y
        self.N = N
        self.name = f"({X.name} (+)_{N.name} {Y.name})"
        self.brute_oracle = (X.brute_oracle and Y.brute_oracle and N.exact
                             and X.dim is not None and Y.dim is not None
                             and X.dim + Y.dim <= 4)
        self.dim = X.dim + Y.dim if X.dim is not None and Y.dim is not None else None

    def to_spec(self):
        return {"sum": {"norm": self.N.to_spec(), "X": self.X.to_spec(), "Y": self.Y.to_spec()}}

    # arithmetic ---------------------------------------------------------------

    def norm(self, v):
        return self.N(self.X.norm(v.x), self.Y.norm(v.y))

    def dual_norm(self, f):
        return self.N.dual_eval(self.X.dual_norm(f.x), self.Y.dual_norm(f.y))

    def pair(self, f, v):
        return self.X.pair(f.x, v.x) + self.Y.pair(f.y, v.y)

    def lincomb(self, a, u, b, v):
        return SumVector(self.X.lincomb(a, u.x, b, v.x), self.Y.lincomb(a, u.y, b, v.y))

    def zero(self):
        return SumVector(self.X.zero(), self.Y.zero())

    def unit_vector(self):
        return SumVector(self.X.unit_vector(), self.Y.zero())

    def scale_functional(self, t, f):
        return SumVector(self.X.scale_functional(t, f.x), self.Y.scale_functional(t, f.y))

    def zero_functional(self):
        return SumVector(self.X.zero_functional(), self.Y.zero_functional())

    def embed(self, which: str, v):
        """``(v, 0)`` or ``(0, v)``."""
        if which == "X":
            return SumVector(v, self.Y.zero())
        return SumVector(self.X.zero(), v)

    def embed_functional(self, which: str, f):
        if which == "X":
            return SumVector(f, self.Y.zero_functional())
        return SumVector(self.X.zero_functional(), f)

    # dual constructions -------------------------------------------------------

    def norming_functional(self, v):
        nx, ny = self.X.norm(v.x), self.Y.norm(v.y)
        c, d = self.N.norming_dual(nx, ny)
        fx = (self.X.scale_functional(c, self.X.norming_functional(v.x)) if nx != 0
              else self.X.zero_functional())
        fy = (self.Y.scale_functional(d, self.Y.norming_functional(v.y)) if ny != 0
              else self.Y.zero_functional())
        return SumVector(fx, fy)

    def norming_vector(self, f):
        nx, ny = self.X.dual_norm(f.x), self.Y.dual_norm(f.y)
        if nx == 0 and ny == 0:
            return self.unit_vector()
        k = self.N.dual_argmax(nx, ny)
        return SumVector(self.X.scale(k.a, self.X.norming_vector(f.x)),
                         self.Y.scale(k.b, self.Y.norming_vector(f.y)))

    # exact slice suprema --------------------------------------------------------

    def sup_distance(self, x, g, level):
        """Reduce to the components.

        For ``N = l_inf`` the ball is a product and the supremum is the larger
        of the two component suprema, each with the other functional at its
        norm.  Otherwise the radii ``(r, s)`` on the ``N``-sphere and the
        split of ``level`` between the components are searched on a grid,
        with the component suprema computed exactly.
        """
        gx, gy = self.X.dual_norm(g.x), self.Y.dual_norm(g.y)
        if self.N.is_linf:
            if level > gx + gy:
                return -math.inf
            a = self.X.sup_distance(x.x, g.x, level - gy)
            b = self.Y.sup_distance(x.y, g.y, level - gx)
            return max(a, b)
        return self._reduced_sup(x, g, float(level), float(gx), float(gy))

    def _component_sup(self, space, v, g, r, t):
        """``sup{||v - u|| : ||u|| <= r, g(u) >= t}``."""
        if r <= 0:
            return float(space.norm(v)) if t <= 0 else -math.inf
        return r * float(space.sup_distance(space.scale(1 / r, v), g, t / r))

    def _reduced_sup(self, x, g, level, gx, gy):
        # probe that both components have an exact route before gridding
        self.X.sup_distance(x.x, g.x, -1.0)
        self.Y.sup_distance(x.y, g.y, -1.0)

        def obj(s, w):
            # s in [0, 1] parameterises the N-sphere, w in [0, 1] the split
            p = self.N.sphere_point(float(s))
            r1, r2 = float(p.a), float(p.b)
            lo = level - r2 * gy
            hi = r1 * gx
            if lo > hi + 1e-15:
                return -math.inf
            t = lo + w * (hi - lo) if hi > lo else lo
            a = self._component_sup(self.X, x.x, g.x, r1, t)
            b = self._component_sup(self.Y, x.y, g.y, r2, level - t)
            if a == -math.inf or b == -math.inf:
                return -math.inf
            return float(self.N.eval(a, b))

        grid = np.linspace(0.0, 1.0, REDUCE_GRID + 1)
        vals = [(obj(s, w), s, w) for s in grid for w in grid]
        vals.sort(reverse=True)
        if vals[0][0] == -math.inf:
            return -math.inf
        best = vals[0][0]
        h0 = 1.0 / REDUCE_GRID
        for v, s, w in vals[:6]:
            if v == -math.inf:
                break
            h = h0
            for _ in range(REDUCE_ROUNDS):
                moved = False
                for ds, dw in ((h, 0), (-h, 0), (0, h), (0, -h), (h, h), (-h, -h), (h, -h), (-h, h)):
                    s2, w2 = min(1.0, max(0.0, s + ds)), min(1.0, max(0.0, w + dw))
                    v2 = obj(s2, w2)
                    if v2 > v:
                        v, s, w, moved = v2, s2, w2, True
                if not moved:
                    h /= 2
            best = max(best, v)
        return best

    # charts --------------------------------------------------------------------

    def chart(self, vectors=(), functionals=()) -> Chart:
        cx = self.X.chart([v.x for v in vectors], [f.x for f in functionals])
        cy = self.Y.chart([v.y for v in vectors], [f.y for f in functionals])
        n1 = cx.dim
        N = self.N

        def encode(v):
            return np.concatenate([cx.encode(v.x), cy.encode(v.y)])

        def decode(arr):
            return SumVector(cx.decode(arr[..., :n1]), cy.decode(arr[..., n1:]))

        def norms(arr):
            return N.eval_array(cx.norms(arr[..., :n1]), cy.norms(arr[..., n1:]))

        def weights(f):
            return np.concatenate([cx.weights(f.x), cy.weights(f.y)])

        def sample(rng, k):
            ux = cx.sample(rng, k)
            uy = cy.sample(rng, k)
            t = rng.random(k)
            q = k // 5
            t[:q] = rng.choice([0.0, 1.0], size=q)
            if N.exact:
                knots = np.array([float(v.t) for v in N.vertices])
                t[q:2 * q] = rng.choice(knots, size=q)
            s = N.eval_array(1 - t, t)
            a, b = (1 - t) / s, t / s
            return np.hstack([ux * a[:, None], uy * b[:, None]])

        return Chart(n1 + cy.dim, encode, decode, norms, weights, sample)

    # serialisation ------------------------------------------------------------------

    def vector_to_json(self, v):
        return {"x": self.X.vector_to_json(v.x), "y": self.Y.vector_to_json(v.y)}

    def vector_from_json(self, data):
        try:
            return SumVector(self.X.vector_from_json(data["x"]), self.Y.vector_from_json(data["y"]))
        except KeyError as exc:
            raise DomainError(f"sum vectors need 'x' and 'y' parts, missing {exc}") from None

    def functional_to_json(self, f):
        return {"x": self.X.functional_to_json(f.x), "y": self.Y.functional_to_json(f.y)}

    def functional_from_json(self, data):
        try:
            return SumVector(self.X.functional_from_json(data["x"]),
                             self.Y.functional_from_json(data["y"]))
        except KeyError as exc:
            raise DomainError(f"sum functionals need 'x' and 'y' parts, missing {exc}") from None
