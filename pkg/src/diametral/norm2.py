"""Absolute normalised norms on R^2.

A norm ``N`` is stored through its profile ``psi(t) = N(1 - t, t)`` on
``[0, 1]`` and evaluated as ``N(a, b) = (a + b) * psi(b / (a + b))``.

Three kinds exist:

* ``lp``      -- the builtin l_p norms, ``p`` in ``[1, inf]``.  ``p = 1`` and
  ``p = inf`` are polyhedral and routed through the exact piecewise-linear
  machinery; other ``p`` use closed forms in floating point.
* ``pl``      -- a convex piecewise-linear profile given by rational knots.
  Every operation is exact (``fractions.Fraction``).
* ``sampled`` -- an arbitrary convex profile given as a vectorised callable;
  everything is grid based with tolerance ``1e-9``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, Infeasible, NotAOH
from .numbers import INF, TOL, close, is_exact

SEARCH_LEVEL = 20  # dyadic sphere grid 2^-20
KL_TOL = 1e-7


@dataclass(frozen=True)
class SpherePoint:
    """A point ``(a, b)`` of the positive unit sphere, ``t = b / (a + b)``."""

    t: object
    a: object
    b: object

    @property
    def pair(self):
        return (self.a, self.b)

    def __iter__(self):
        return iter((self.a, self.b))


@dataclass(frozen=True)
class NormClassification:
    variant: str  # "alpha" or "aoh"
    star: tuple
    pair: Optional[SpherePoint] = None
    beta: bool = False

    @property
    def is_aoh(self) -> bool:
        return self.variant == "aoh"


def _check_nonneg(*values):
    for v in values:
        if v < 0:
            raise DomainError(f"expected nonnegative input, got {v}")


class AbsoluteNorm:
    """An absolute normalised norm on R^2."""

    def __init__(self, kind: str, *, p=None, knots=None, profile=None,
                 name: Optional[str] = None):
        self.kind = kind
        self.p = p
        self._profile = profile
        self._knots = None
        if kind == "lp":
            if p is None or p < 1:
                raise DomainError("l_p norms need p >= 1")
            if p == 1:
                self._knots = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1)))
            elif p == INF:
                self._knots = ((Fraction(0), Fraction(1)),
                               (Fraction(1, 2), Fraction(1, 2)),
                               (Fraction(1), Fraction(1)))
            self.name = name or ("l_inf" if p == INF else f"l_{p}")
        elif kind == "pl":
            self._knots = _validate_knots(knots)
            self.name = name or "pl"
        elif kind == "sampled":
            if profile is None:
                raise DomainError("sampled norms need a profile callable")
            _validate_profile(profile)
            self.name = name or "sampled"
        else:
            raise DomainError(f"unknown norm kind {kind!r}")

        if self._knots is not None:
            ks = self._knots
            self._vertices = tuple(
                SpherePoint(t, (1 - t) / s, t / s) for t, s in ks)
            pieces = []
            for (t0, s0), (t1, s1) in zip(ks, ks[1:]):
                slope = (s1 - s0) / (t1 - t0)
                icpt = s0 - slope * t0
                pieces.append((icpt, icpt + slope))
            self._pieces = tuple(pieces)

    # construction helpers -------------------------------------------------

    @classmethod
    def lp(cls, p) -> "AbsoluteNorm":
        if isinstance(p, int):
            p = Fraction(p)
        return cls("lp", p=p)

    @classmethod
    def piecewise(cls, knots, name=None) -> "AbsoluteNorm":
        return cls("pl", knots=knots, name=name)

    @classmethod
    def sampled(cls, profile: Callable, name=None) -> "AbsoluteNorm":
        return cls("sampled", profile=profile, name=name)

    @classmethod
    def hexagonal(cls, level=Fraction(4, 5)) -> "AbsoluteNorm":
        """Profile ``max(1 - t, t, level)``; ``level = 4/5`` is the usual example."""
        level = Fraction(level)
        if not Fraction(1, 2) < level < 1:
            raise DomainError("hexagonal level must lie in (1/2, 1)")
        knots = [(0, 1), (1 - level, level), (level, level), (1, 1)]
        return cls("pl", knots=knots, name=f"hex({level})")

    def to_spec(self) -> dict:
        from .numbers import to_json
        if self.kind == "lp":
            return {"kind": "lp", "p": to_json(self.p)}
        if self.kind == "pl":
            return {"kind": "pl", "knots": to_json(self._knots)}
        raise DomainError("sampled norms cannot be serialised")

    def __repr__(self):
        return f"AbsoluteNorm({self.name})"

    # basic properties -------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self._knots is not None

    @property
    def knots(self):
        return self._knots

    @property
    def vertices(self):
        """Sphere points at the profile knots (exact kinds only)."""
        return self._vertices

    @property
    def pieces(self):
        """Edge functionals ``(alpha, beta)``; ``N = max(alpha*a + beta*b)``."""
        return self._pieces

    @property
    def is_linf(self) -> bool:
        return close(self(1, 1), 1)

    def psi(self, t):
        if self.exact:
            return self(1 - t, t)
        if self.kind == "lp":
            return self(1 - t, t)
        return self._profile(t)

    # evaluation ---------------------------------------------------------------

    def __call__(self, a, b):
        return self.eval(a, b)

    def eval(self, a, b):
        _check_nonneg(a, b)
        if self.exact:
            return max(al * a + be * b for al, be in self._pieces)
        if a == 0 and b == 0:
            return 0
        if self.kind == "lp":
            p = float(self.p)
            m = max(a, b)
            return float(m) * ((a / m) ** p + (b / m) ** p) ** (1.0 / p)
        s = a + b
        return float(s) * float(self._profile(float(b / s)))

    def eval_array(self, a, b):
        """Vectorised float evaluation on arrays of nonnegative reals."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if self.exact:
            out = None
            for al, be in self._pieces:
                v = float(al) * a + float(be) * b
                out = v if out is None else np.maximum(out, v)
            return out
        if self.kind == "lp":
            p = float(self.p)
            m = np.maximum(a, b)
            safe = np.where(m > 0, m, 1.0)
            return m * ((a / safe) ** p + (b / safe) ** p) ** (1.0 / p)
        s = a + b
        safe = np.where(s > 0, s, 1.0)
        return s * self._profile(b / safe)

    # sphere parameterisation ----------------------------------------------

    def sphere_point(self, t) -> SpherePoint:
        if not 0 <= t <= 1:
            raise DomainError("sphere parameter must lie in [0, 1]")
        s = self.psi(t)
        return SpherePoint(t, (1 - t) / s, t / s)

    def point(self, a, b) -> SpherePoint:
        """Wrap ``(a, b)`` with ``N(a, b) = 1`` as a sphere point."""
        _check_nonneg(a, b)
        if a == 0 and b == 0:
            raise DomainError("(0, 0) is not on the unit sphere")
        if not close(self(a, b), 1):
            raise DomainError(f"N{(a, b)} = {self(a, b)} != 1")
        return SpherePoint(b / (a + b), a, b)

    def _sphere_grid(self, level=SEARCH_LEVEL):
        t = np.linspace(0.0, 1.0, 2 ** level + 1)
        s = self._profile_array(t)
        return t, (1 - t) / s, t / s

    def _profile_array(self, t):
        if self.kind == "sampled":
            return np.asarray(self._profile(t), dtype=float)
        return self.eval_array(1 - t, t)

    # duality --------------------------------------------------------------------

    def dual_eval(self, c, d):
        """``N*(c, d) = sup{ac + bd : N(a, b) <= 1}`` for ``c, d >= 0``."""
        _check_nonneg(c, d)
        if self.exact:
            return max(c * v.a + d * v.b for v in self._vertices)
        if self.kind == "lp":
            p = float(self.p)
            q = p / (p - 1)
            m = max(c, d)
            if m == 0:
                return 0
            return float(m) * ((c / m) ** q + (d / m) ** q) ** (1.0 / q)
        k = self._dual_argmax_grid(c, d)
        return c * k.a + d * k.b

    def dual_argmax(self, c, d) -> SpherePoint:
        """A sphere point norming ``(c, d)``; lexicographic maximum among ties."""
        _check_nonneg(c, d)
        if self.exact:
            best = self.dual_eval(c, d)
            hits = [v for v in self._vertices if close(c * v.a + d * v.b, best)]
            return max(hits, key=lambda v: (v.a, v.b))
        if self.kind == "lp":
            if c == 0 and d == 0:
                return self.sphere_point(Fraction(0))
            p = float(self.p)
            q = p / (p - 1)
            nq = self.dual_eval(c, d)
            k = (c / nq) ** (q - 1)
            l = (d / nq) ** (q - 1)
            return SpherePoint(l / (k + l), k, l)
        return self._dual_argmax_grid(c, d)

    def _dual_argmax_grid(self, c, d) -> SpherePoint:
        t, a, b = self._sphere_grid(16)
        vals = float(c) * a + float(d) * b
        i = int(np.argmax(vals))
        lo, hi = t[max(i - 1, 0)], t[min(i + 1, len(t) - 1)]
        f = lambda s: -(float(c) * (1 - s) + float(d) * s) / float(self._profile(s))
        s = _golden_min(f, lo, hi)
        return self.sphere_point(s)

    def norming_dual(self, a, b):
        """``(c, d)`` with ``N*(c, d) = 1`` and ``ac + bd = N(a, b)``."""
        _check_nonneg(a, b)
        if a == 0 and b == 0:
            raise DomainError("cannot norm the zero vector")
        n = self(a, b)
        if self.exact:
            hits = [pc for pc in self._pieces if close(pc[0] * a + pc[1] * b, n)]
            return max(hits)
        if self.kind == "lp":
            p = float(self.p)
            return ((a / n) ** (p - 1), (b / n) ** (p - 1))
        h = 1e-7
        ga = (self(a + h, b) - self(max(a - h, 0), b)) / (a + h - max(a - h, 0))
        gb = (self(a, b + h) - self(a, max(b - h, 0))) / (b + h - max(b - h, 0))
        ga, gb = max(ga, 0.0), max(gb, 0.0)
        s = self.dual_eval(ga, gb)
        return (ga / s, gb / s)

    # the constants (*) and the dichotomy ------------------------------------

    def star_constants(self):
        """``c = max{e : N(e, 1) = 1}`` and ``d = max{f : N(1, f) = 1}``."""
        if self.exact:
            c = max(v.a for v in self._vertices if v.b == 1)
            d = max(v.b for v in self._vertices if v.a == 1)
            return (c, d)
        if self.kind == "lp":
            # strictly convex for 1 < p < inf
            return (0.0, 0.0)
        return (_level_bisect(lambda e: self(e, 1)), _level_bisect(lambda f: self(1, f)))

    def _doubly_diametral(self, w1, w2) -> Optional[SpherePoint]:
        """Sphere points diametral to both ``w1`` and ``w2``.

        The valid set is a closed arc of the sphere; its midpoint (in ``t``)
        is returned, or ``None`` when the arc is empty.
        """
        if self.exact and is_exact(*w1, *w2):
            good = [v for v in self._vertices
                    if self(v.a + w1[0], v.b + w1[1]) == 2
                    and self(v.a + w2[0], v.b + w2[1]) == 2]
            if not good:
                return None
            return self.sphere_point((good[0].t + good[-1].t) / 2)
        t, a, b = self._sphere_grid()
        g1 = 2 - self.eval_array(a + float(w1[0]), b + float(w1[1]))
        g2 = 2 - self.eval_array(a + float(w2[0]), b + float(w2[1]))
        idx = np.flatnonzero(np.maximum(g1, g2) <= 2 * TOL)
        if idx.size == 0:
            return None
        mid = (t[idx[0]] + t[idx[-1]]) / 2
        return self.sphere_point(float(mid))

    def has_beta(self) -> Optional[SpherePoint]:
        """A pair diametral to both ``(0, 1)`` and ``(1, 0)``, if any."""
        zero, one = Fraction(0), Fraction(1)
        return self._doubly_diametral((zero, one), (one, zero))

    def classify(self) -> NormClassification:
        c, d = self.star_constants()
        one = Fraction(1) if is_exact(c, d) else 1.0
        pair = self._doubly_diametral((c, one), (one, d))
        if pair is None:
            return NormClassification("alpha", (c, d))
        beta = (close(self(pair.a, pair.b + 1), 2)
                and close(self(pair.a + 1, pair.b), 2))
        return NormClassification("aoh", (c, d), pair, beta)

    def satisfies_star_star(self, a, b) -> bool:
        """Whether ``(a, b)`` satisfies both equations of (**)."""
        c, d = self.star_constants()
        return (close(self(a, b), 1) and close(self(a + c, b + 1), 2)
                and close(self(a + 1, b + d), 2))

    def find_kl(self, ab, dual) -> SpherePoint:
        """Sphere ``(k, l)`` with ``N(ab + (k, l)) = 2`` and ``k*c + l*d = 1``.

        ``dual = (c, d)`` must have dual norm one.  Among valid points the
        lexicographic maximum is returned.
        """
        if not self.classify().is_aoh:
            raise NotAOH(f"{self.name} has property (alpha)")
        a, b = ab
        c, d = dual
        _check_nonneg(c, d)
        if not close(self.dual_eval(c, d), 1):
            raise DomainError(f"dual pair {dual} does not have dual norm one")
        if self.exact:
            good = [v for v in self._vertices
                    if close(c * v.a + d * v.b, 1) and close(self(a + v.a, b + v.b), 2)]
        else:
            t, ka, kb = self._sphere_grid(16)
            ok = ((np.abs(float(c) * ka + float(d) * kb - 1) <= KL_TOL)
                  & (np.abs(self.eval_array(ka + float(a), kb + float(b)) - 2) <= KL_TOL))
            good = [SpherePoint(float(t[i]), float(ka[i]), float(kb[i]))
                    for i in np.flatnonzero(ok)]
        if not good:
            raise Infeasible(f"no (k, l) for pair {ab} and dual {dual}")
        return max(good, key=lambda v: (v.a, v.b))

    # flatness modulus ----------------------------------------------------------

    def level_width(self, y):
        """``max{x >= 0 : N(x, y) <= 1}`` for ``0 <= y <= 1``."""
        if self.exact:
            return max(Fraction(0), min((1 - be * y) / al for al, be in self._pieces if al > 0))
        return _level_bisect(lambda x: self(x, y))

    def _flatness_gap(self, delta):
        """Worst ``r - p`` over the configurations constrained by ``delta``."""
        top = 2 - delta
        if self.exact and is_exact(delta):
            ys = sorted({v.b for v in self._vertices})
            qs = {Fraction(0), top}
            qs |= {2 * y for y in ys if 2 * y <= top}
            qs |= {top * y for y in ys}
            return max(2 * self.level_width(q / 2) - top * self.level_width(q / top)
                       for q in qs)
        q = np.linspace(0.0, float(top), 4097)
        hi = _level_bisect_array(self, q / 2)
        lo = _level_bisect_array(self, q / float(top))
        return float(np.max(2 * hi - float(top) * lo))

    def flatness_delta(self, bound):
        """A ``delta > 0`` such that ``2 - delta <= N(p, q) <= N(r, q) <= 2``
        together with ``q < 2 - delta`` forces ``|p - r| < bound``.

        Candidates ``bound / 2, bound / 4, ...`` are tried in turn.
        """
        if bound <= 0:
            raise DomainError("bound must be positive")
        delta = bound / 2 if bound < 2 else (Fraction(1) if is_exact(bound) else 1.0)
        for _ in range(200):
            if self._flatness_gap(delta) < bound:
                return delta
            delta = delta / 2
        raise Infeasible("no flatness modulus found")  # pragma: no cover


def verify_flatness(norm: AbsoluteNorm, delta, bound, n: int = 200):
    """Brute-force check of a flatness modulus on an ``n^3`` grid.

    Returns ``(ok, worst)`` where ``worst`` is the largest ``|p - r|`` among
    grid triples meeting the hypotheses.
    """
    g = np.linspace(0.0, 2.0, n)
    delta = float(delta)
    P, R = np.meshgrid(g, g, indexing="ij")
    worst = 0.0
    for q in g[g < 2 - delta]:
        npq = norm.eval_array(g, np.full_like(g, q))
        NP = npq[:, None]
        NR = npq[None, :]
        mask = (NP >= 2 - delta) & (NP <= NR) & (NR <= 2)
        if mask.any():
            worst = max(worst, float(np.max(np.abs(P - R)[mask])))
    return worst < float(bound), worst


def _golden_min(f, lo, hi, iters=80):
    gr = (math.sqrt(5) - 1) / 2
    a, b = float(lo), float(hi)
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    return (a + b) / 2


def _level_bisect(fn, iters=80):
    """Largest ``x`` in ``[0, 1]`` with ``fn(x) <= 1`` for nondecreasing ``fn``."""
    if fn(1.0) <= 1 + TOL:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = (lo + hi) / 2
        if fn(mid) <= 1 + TOL:
            lo = mid
        else:
            hi = mid
    return lo


def _level_bisect_array(norm, y, iters=60):
    y = np.asarray(y, dtype=float)
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    full = norm.eval_array(np.ones_like(y), y) <= 1
    for _ in range(iters):
        mid = (lo + hi) / 2
        ok = norm.eval_array(mid, y) <= 1
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return np.where(full, 1.0, lo)


def _validate_knots(knots: Sequence) -> tuple:
    ks = tuple((Fraction(t), Fraction(s)) for t, s in knots)
    if len(ks) < 2 or ks[0][0] != 0 or ks[-1][0] != 1:
        raise DomainError("knots must start at t = 0 and end at t = 1")
    if ks[0][1] != 1 or ks[-1][1] != 1:
        raise DomainError("profile must satisfy psi(0) = psi(1) = 1")
    ts = [t for t, _ in ks]
    if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
        raise DomainError("knot parameters must be strictly increasing")
    for t, s in ks:
        if not max(1 - t, t) <= s <= 1:
            raise DomainError(f"profile value {s} at {t} violates max(1-t, t) <= psi <= 1")
    slopes = [(s1 - s0) / (t1 - t0) for (t0, s0), (t1, s1) in zip(ks, ks[1:])]
    if any(m1 < m0 for m0, m1 in zip(slopes, slopes[1:])):
        raise DomainError("profile is not convex")
    return ks


def _validate_profile(profile, n=1025):
    t = np.linspace(0.0, 1.0, n)
    s = np.asarray(profile(t), dtype=float)
    if abs(s[0] - 1) > TOL or abs(s[-1] - 1) > TOL:
        raise DomainError("profile must satisfy psi(0) = psi(1) = 1")
    if np.any(s < np.maximum(1 - t, t) - TOL) or np.any(s > 1 + TOL):
        raise DomainError("profile leaves the band max(1-t, t) <= psi <= 1")
    if np.any(np.diff(s, 2) < -1e-7):
        raise DomainError("profile is not convex on the sample grid")


# module-level functional API -------------------------------------------------

def eval_norm(norm: AbsoluteNorm, a, b):
    return norm.eval(a, b)


def dual_eval(norm: AbsoluteNorm, c, d):
    return norm.dual_eval(c, d)


def star_constants(norm: AbsoluteNorm):
    return norm.star_constants()


def has_beta(norm: AbsoluteNorm):
    return norm.has_beta()


def classify(norm: AbsoluteNorm) -> NormClassification:
    return norm.classify()


def find_kl(norm: AbsoluteNorm, ab, dual) -> SpherePoint:
    return norm.find_kl(ab, dual)


def flatness_delta(norm: AbsoluteNorm, bound):
    return norm.flatness_delta(bound)


L1 = AbsoluteNorm.lp(1)
LINF = AbsoluteNorm.lp(INF)
L2 = AbsoluteNorm.lp(2)
HEX = AbsoluteNorm.hexagonal()
