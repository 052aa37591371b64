"""Sphere points that carry their own witness oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..errors import DomainError, NoOracle
from ..spaces.base import DeskSpace, DiametralWitness, SliceSpec
from ..spaces.oracles import daugavet_witness


@dataclass(frozen=True)
class OraclePoint:
    """A unit vector of ``space`` together with a witness oracle.

    A ``"daugavet"`` oracle accepts any norm-one slice.  A ``"delta"`` oracle
    needs a slice containing the point and answers in the slice widened by
    ``k``.
    """

    space: DeskSpace
    vector: Any
    kind: str
    k: Any
    fn: Callable = field(repr=False, compare=False)
    info: dict = field(default_factory=dict, compare=False)

    def witness(self, slice_: SliceSpec, eps) -> DiametralWitness:
        return self.fn(slice_, eps)

    @property
    def is_daugavet(self) -> bool:
        return self.kind == "daugavet"


def daugavet_point(space: DeskSpace, x) -> OraclePoint:
    """Wrap a sphere point of a model with a built-in Daugavet oracle."""
    if not space.daugavet_oracle:
        raise NoOracle(f"{space.name} has no Daugavet witness oracle")
    if space.norm(x) != 1:
        raise DomainError("x must lie on the unit sphere")
    return OraclePoint(space, x, "daugavet", 1,
                       lambda s, e: daugavet_witness(space, x, s, e))


def as_oracle_point(space: DeskSpace, x):
    """``x`` itself if it already carries an oracle, else the model's oracle,
    else ``None``."""
    if isinstance(x, OraclePoint):
        return x
    if space.daugavet_oracle:
        return daugavet_point(space, x)
    return None


def vector_of(x):
    return x.vector if isinstance(x, OraclePoint) else x
