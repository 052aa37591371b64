"""R^n with an l_p norm.  These spaces carry no Daugavet oracle and serve as
negative controls; the exact slice-supremum routes live here."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..errors import DomainError
from ..numbers import INF, exact_sqrt, sign, to_json, to_number
from .base import Chart, DeskSpace

FEAS_TOL = 1e-10


class FiniteDim(DeskSpace):
    def __init__(self, n: int, p=2):
        if n < 1:
            raise DomainError("dimension must be positive")
        if p != INF:
            p = Fraction(p) if not isinstance(p, float) else p
            if p < 1:
                raise DomainError("need p >= 1")
        self.n = n
        self.dim = n
        self.p = p
        self.q = INF if p == 1 else (1 if p == INF else p / (p - 1))
        self.brute_oracle = n <= 4 and p in (1, 2, INF)
        self.name = f"l_{'inf' if p == INF else p}^{n}"

    def to_spec(self):
        return {"kind": "finite", "n": self.n, "p": to_json(self.p)}

    @staticmethod
    def _pnorm(v, p):
        if p == 1:
            return sum(abs(c) for c in v)
        if p == INF:
            return max(abs(c) for c in v)
        if p == 2:
            return exact_sqrt(sum(c * c for c in v))
        pf = float(p)
        return sum(abs(float(c)) ** pf for c in v) ** (1 / pf)

    def norm(self, v):
        return self._pnorm(v, self.p)

    def dual_norm(self, f):
        return self._pnorm(f, self.q)

    def pair(self, f, v):
        return sum(a * b for a, b in zip(f, v))

    def lincomb(self, a, u, b, v):
        return tuple(a * x + b * y for x, y in zip(u, v))

    def zero(self):
        return (Fraction(0),) * self.n

    def unit_vector(self):
        return (Fraction(1),) + (Fraction(0),) * (self.n - 1)

    def scale_functional(self, t, f):
        return tuple(t * c for c in f)

    def basis(self, i, c=Fraction(1)):
        return tuple(c if j == i else Fraction(0) for j in range(self.n))

    def _dual_vector(self, v, p):
        """Unit vector of the l_q dual norming ``v`` for the l_p norm."""
        n = self._pnorm(v, p)
        if n == 0:
            raise DomainError("zero vector cannot be normed")
        if p == INF:
            i = max(range(self.n), key=lambda j: abs(v[j]))
            return self.basis(i, Fraction(sign(v[i])))
        if p == 1:
            return tuple(Fraction(sign(c)) for c in v)
        if p == 2:
            return tuple(c / n for c in v)
        pf = float(p)
        return tuple(sign(c) * (abs(float(c)) / float(n)) ** (pf - 1) for c in v)

    def norming_functional(self, x):
        return self._dual_vector(x, self.p)

    def norming_vector(self, f):
        if all(c == 0 for c in f):
            return self.unit_vector()
        return self._dual_vector(f, self.q)

    # exact slice suprema ---------------------------------------------------

    def sup_distance(self, x, g, level):
        """``sup{||x - u|| : ||u|| <= 1, g(u) >= level}``; ``-inf`` when empty."""
        if self.p == 2:
            return _l2_cap_sup(np.array(x, float), np.array(g, float), float(level))
        if self.p in (1, INF):
            return self._vertex_sup(np.array(x, float), np.array(g, float), float(level))
        raise NotImplementedError(f"no exact route for {self.name}")

    def _ball_constraints(self):
        n = self.n
        if self.p == INF:
            A = np.vstack([np.eye(n), -np.eye(n)])
        else:
            A = np.array(list(itertools.product([1.0, -1.0], repeat=n)))
        return A, np.ones(len(A))

    def _vertex_sup(self, x, g, level):
        A, b = self._ball_constraints()
        A = np.vstack([A, -g])
        b = np.append(b, -level)
        best = -math.inf
        for rows in itertools.combinations(range(len(A)), self.n):
            M = A[list(rows)]
            if abs(np.linalg.det(M)) < 1e-12:
                continue
            v = np.linalg.solve(M, b[list(rows)])
            if np.all(A @ v <= b + FEAS_TOL):
                best = max(best, float(np.linalg.norm(x - v, ord=_ord(self.p))))
        return best

    def vertex_count(self, g, level) -> int:
        A, b = self._ball_constraints()
        A = np.vstack([A, -np.asarray(g, float)])
        b = np.append(b, -float(level))
        count = 0
        for rows in itertools.combinations(range(len(A)), self.n):
            M = A[list(rows)]
            if abs(np.linalg.det(M)) >= 1e-12:
                v = np.linalg.solve(M, b[list(rows)])
                count += bool(np.all(A @ v <= b + FEAS_TOL))
        return count

    def angle_scan_sup(self, x, g, level, grid: int = 1 << 14):
        """Grid over the 2-d unit sphere plus local golden-section ascent."""
        if self.n != 2:
            raise DomainError("angle scan needs n == 2")
        x = np.array(x, float)
        g = np.array(g, float)
        level = float(level)
        order = _ord(self.p)

        def point(theta):
            d = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
            return d / np.linalg.norm(d, ord=order, axis=-1, keepdims=True)

        def obj(theta):
            u = point(np.asarray(theta, float))
            val = np.linalg.norm(x - u, ord=order, axis=-1)
            return np.where(u @ g >= level, val, -np.inf)

        th = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
        vals = obj(th)
        if not np.isfinite(vals).any():
            return -math.inf
        step = th[1] - th[0]
        best = float(np.max(vals))
        feas = np.isfinite(vals)
        # boundary points of feasible arcs, by bisection on g(u(theta)) = level
        edges = np.flatnonzero(feas != np.roll(feas, -1))
        for i in edges:
            lo, hi = th[i], th[i] + step
            f_lo = feas[i]
            for _ in range(60):
                mid = (lo + hi) / 2
                if (point(mid) @ g >= level) == f_lo:
                    lo = mid
                else:
                    hi = mid
            edge = lo if f_lo else hi
            best = max(best, float(obj(edge)))
        # local ascent around the leading grid maxima
        for i in np.argsort(vals)[::-1][:8]:
            if not np.isfinite(vals[i]):
                break
            a, b = th[i] - step, th[i] + step
            gr = (math.sqrt(5) - 1) / 2
            for _ in range(60):
                c, d = b - gr * (b - a), a + gr * (b - a)
                if obj(c) >= obj(d):
                    b = d
                else:
                    a = c
            best = max(best, float(obj((a + b) / 2)))
        return best

    def chart(self, vectors=(), functionals=()) -> Chart:
        n = self.n
        order = _ord(self.p)

        def norms(arr):
            return np.linalg.norm(arr, ord=order, axis=-1)

        def sample(rng, k):
            out = rng.standard_normal((k, n))
            quarter = k // 4
            if self.p == INF:
                out[:quarter] = rng.choice([-1.0, 1.0], size=(quarter, n))
            elif self.p == 1:
                out[:quarter] = 0.0
                out[np.arange(quarter), rng.integers(0, n, quarter)] = rng.choice([-1.0, 1.0], quarter)
            return out / norms(out)[:, None]

        return Chart(
            n,
            lambda v: np.array([float(c) for c in v]),
            lambda arr: tuple(Fraction(float(a)) for a in arr),
            norms,
            lambda f: np.array([float(c) for c in f]),
            sample,
        )

    def vector_to_json(self, v):
        return {"coords": to_json(v)}

    def vector_from_json(self, data):
        v = tuple(to_number(c) for c in data["coords"])
        if len(v) != self.n:
            raise DomainError(f"expected {self.n} coordinates")
        return v

    functional_to_json = vector_to_json
    functional_from_json = vector_from_json


def _ord(p):
    if p == INF:
        return np.inf
    return float(p)


def _l2_cap_sup(x, g, level):
    """Closed form over ``{||u||_2 <= 1, g.u >= level}``."""
    gn = float(np.linalg.norm(g))
    xn = float(np.linalg.norm(x))
    if gn == 0:
        return 1 + xn if level <= 0 else -math.inf
    gh, ell = g / gn, level / gn
    if ell > 1 + 1e-15:
        return -math.inf
    ell = min(ell, 1.0)
    if xn == 0:
        return 1.0
    if -x @ gh / xn >= ell:
        return 1 + xn
    xg = float(x @ gh)
    perp = float(np.linalg.norm(x - xg * gh))
    low = ell * xg - math.sqrt(max(0.0, 1 - ell * ell)) * perp
    return math.sqrt(max(0.0, xn * xn + 1 - 2 * low))
