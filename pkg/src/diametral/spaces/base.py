"""Shared value types and the desk-space interface."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from ..errors import DomainError, NoOracle


@dataclass(frozen=True)
class SliceSpec:
    """The slice ``S(B, f, alpha) = {u in B : f(u) > 1 - alpha}``."""

    f: Any
    alpha: Any

    def widened(self, k) -> "SliceSpec":
        return SliceSpec(self.f, k * self.alpha)


@dataclass(frozen=True)
class DiametralWitness:
    """A ball element ``u`` in a (possibly widened) slice, far from ``x``.

    ``alpha`` is the width actually certified, i.e. already multiplied by any
    widening factor.
    """

    u: Any
    value: Any
    distance: Any
    eps: Any
    alpha: Any
    trace: dict = field(default_factory=dict, compare=False)

    def validate(self, space, x, f) -> bool:
        """Re-check ``||u|| <= 1``, ``f(u) > 1 - alpha`` and ``||x - u|| >= 2 - eps``."""
        return check_witness(space, x, SliceSpec(f, self.alpha), self.eps, self.u)


@dataclass(frozen=True)
class NonDeltaCertificate:
    """Claim: every ``u`` in ``S(B, f, k * alpha)`` has ``||x - u|| < 2 - eps``.

    ``contains_point`` records whether ``x`` itself is asserted to lie in
    ``S(B, f, alpha)`` (True for non-Delta certificates, False for the
    Daugavet-negating form where only slice avoidance is claimed).
    """

    f: Any
    alpha: Any
    eps: Any
    k: Any = 1
    contains_point: bool = True
    trace: dict = field(default_factory=dict, compare=False)

    @property
    def bound(self):
        return 2 - self.eps

    @property
    def slice(self) -> SliceSpec:
        return SliceSpec(self.f, self.k * self.alpha)

    def replace(self, **changes) -> "NonDeltaCertificate":
        data = dict(f=self.f, alpha=self.alpha, eps=self.eps, k=self.k,
                    contains_point=self.contains_point, trace=dict(self.trace))
        data.update(changes)
        return NonDeltaCertificate(**data)


def check_witness(space, x, slice_: SliceSpec, eps, u) -> bool:
    return (space.norm(u) <= 1
            and space.pair(slice_.f, u) > 1 - slice_.alpha
            and space.norm(space.sub(x, u)) >= 2 - eps)


@dataclass
class Chart:
    """A finite coordinate window on a desk space.

    Vectors in the window are float arrays of length ``dim``; ``norms`` maps a
    ``(k, dim)`` batch to the ``k`` space norms, ``weights(f)`` gives the array
    ``w`` with ``f(v) = w @ encode(v)``.
    """

    dim: int
    encode: Callable
    decode: Callable
    norms: Callable
    weights: Callable
    sample: Callable  # (rng, n) -> (n, dim) unit-sphere points


class DeskSpace:
    """Interface for the finitely representable Banach space models."""

    daugavet_oracle = False
    brute_oracle = False
    dim: Optional[int] = None
    name = "space"

    # arithmetic
    def norm(self, v):
        raise NotImplementedError

    def dual_norm(self, f):
        raise NotImplementedError

    def pair(self, f, v):
        raise NotImplementedError

    def lincomb(self, a, u, b, v):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def scale_functional(self, t, f):
        raise NotImplementedError

    def sub(self, u, v):
        return self.lincomb(1, u, -1, v)

    def scale(self, t, v):
        return self.lincomb(t, v, 0, v)

    # dual constructions
    def norming_functional(self, x):
        raise NotImplementedError

    def norming_vector(self, f):
        raise NotImplementedError

    def unit_vector(self):
        raise NotImplementedError

    def zero_functional(self):
        return self.scale_functional(0, self.norming_functional(self.unit_vector()))

    def normalized_functional(self, f):
        n = self.dual_norm(f)
        if n == 0:
            raise DomainError("zero functional cannot be normalised")
        return self.scale_functional(1 / n, f)

    # oracles
    def daugavet_witness(self, x, slice_: SliceSpec, eps) -> DiametralWitness:
        raise NoOracle(f"{self.name} has no Daugavet witness oracle")

    def sup_distance(self, x, g, level):
        """``sup{||x - u|| : ||u|| <= 1, g(u) >= level}`` by an exact route."""
        raise NotImplementedError

    def chart(self, vectors=(), functionals=()) -> Chart:
        raise NotImplementedError

    # serialisation
    def to_spec(self) -> dict:
        raise NotImplementedError

    def vector_to_json(self, v):
        raise NotImplementedError

    def vector_from_json(self, data):
        raise NotImplementedError

    def functional_to_json(self, f):
        raise NotImplementedError

    def functional_from_json(self, data):
        raise NotImplementedError


def sphere_normalize(chart: Chart, arr: np.ndarray) -> np.ndarray:
    n = chart.norms(arr)
    n = np.where(n > 0, n, 1.0)
    return arr / n[:, None]
