"""Sampling plus projected coordinate ascent for ``max ||x - u||`` over a slice.

Works on any space exposing a :class:`~diametral.spaces.base.Chart`.  The
feasible set is ``{u : ||u|| <= 1, g.u > level}``; infeasible trial points are
pulled back along the segment towards an anchor with ``g.anchor`` maximal,
which keeps them in the ball and lands them on the slice boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptySlice

CHUNK = 10_000
SHRINK = 1 + 1e-12
MAX_COORDS = 48


@dataclass
class SearchResult:
    value: float
    u: np.ndarray
    evaluations: int


class _Problem:
    def __init__(self, chart, x, g, level, anchor):
        self.chart = chart
        self.x = x
        self.g = g
        self.level = level
        self.anchor = anchor
        self.ga = float(anchor @ g)
        if self.ga <= level:
            raise EmptySlice("anchor does not reach the slice")

    def into_ball(self, U):
        n = self.chart.norms(U)
        return U / (np.maximum(n, 1.0) * SHRINK)[:, None]

    def repair(self, U):
        gu = U @ self.g
        bad = gu <= self.level
        if bad.any():
            tau = (self.level - gu[bad]) / (self.ga - gu[bad])
            tau = np.minimum(1.0, tau * (1 + 1e-9) + 1e-12)
            U = U.copy()
            U[bad] = U[bad] + tau[:, None] * (self.anchor - U[bad])
        return U

    def values(self, U):
        return self.chart.norms(self.x[None, :] - U)


def search_sup(chart, x, g, level, anchor, *, samples=20_000, ascent_steps=200,
               starts=8, seed=0, target=None) -> SearchResult:
    """Best ``||x - u||`` found; stops early once ``target`` is reached."""
    rng = np.random.default_rng(seed)
    prob = _Problem(chart, np.asarray(x, float), np.asarray(g, float), float(level),
                    np.asarray(anchor, float) / SHRINK)
    pool_u = prob.anchor[None, :]
    pool_v = prob.values(pool_u)
    evals = 1
    done = 0
    while done < samples:
        m = min(CHUNK, samples - done)
        U = chart.sample(rng, m) / SHRINK
        q = m // 4
        U[:q] *= rng.random(q)[:, None] ** (1.0 / chart.dim)
        U = prob.repair(U)
        V = prob.values(U)
        evals += m
        done += m
        pool_u = np.vstack([pool_u, U])
        pool_v = np.concatenate([pool_v, V])
        top = np.argsort(pool_v)[::-1][:starts]
        pool_u, pool_v = pool_u[top], pool_v[top]
        if target is not None and pool_v[0] >= target:
            return SearchResult(float(pool_v[0]), pool_u[0], evals)

    best = SearchResult(float(pool_v[0]), pool_u[0], evals)
    for u, v in zip(pool_u, pool_v):
        u, v, used = _ascend(prob, u, float(v), ascent_steps, rng, target)
        best.evaluations += used
        if v > best.value:
            best.value, best.u = v, u
        if target is not None and best.value >= target:
            break
    return best


def _ascend(prob, u, v, steps, rng, target):
    dim = prob.chart.dim
    step = 0.25
    used = 0
    for _ in range(steps):
        coords = np.arange(dim) if dim <= MAX_COORDS else rng.choice(dim, MAX_COORDS, replace=False)
        E = np.zeros((len(coords), dim))
        E[np.arange(len(coords)), coords] = step
        C = np.vstack([u + E, u - E, u[None, :] * 1.5])
        C = prob.repair(prob.into_ball(C))
        V = prob.values(C)
        used += len(C)
        i = int(np.argmax(V))
        if V[i] > v + 1e-15:
            u, v = C[i], float(V[i])
            if target is not None and v >= target:
                break
        else:
            step /= 2
            if step < 1e-12:
                break
    return u, v, used
