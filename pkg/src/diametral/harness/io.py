"""JSON encodings for norms, spaces, vectors, slices, witnesses and certificates.

Rationals travel as ``"num/den"`` strings.  Space specs are recursive::

    {"kind": "c01"} | {"kind": "l1step"} | {"kind": "finite", "n": 2, "p": "2"}
    {"sum": {"norm": <norm spec>, "X": <space spec>, "Y": <space spec>}}
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import ConfigError, DomainError
from ..norm2 import AbsoluteNorm
from ..numbers import to_json, to_number
from ..spaces import C01PL, FiniteDim, L1Step, NonDeltaCertificate, SliceSpec
from ..spaces.base import DiametralWitness
from ..sums import SumSpace


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def dumps(data) -> str:
    return json.dumps(to_json(data), indent=2, sort_keys=True)


def norm_from_spec(spec) -> AbsoluteNorm:
    try:
        kind = spec["kind"]
        if kind == "lp":
            return AbsoluteNorm.lp(to_number(spec["p"]))
        if kind == "pl":
            knots = [(to_number(t), to_number(s)) for t, s in spec["knots"]]
            return AbsoluteNorm.piecewise(knots, name=spec.get("name"))
        if kind == "hex":
            return AbsoluteNorm.hexagonal(to_number(spec.get("level", "4/5")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad norm spec {spec!r}: {exc}") from None
    raise ConfigError(f"unknown norm kind {spec.get('kind')!r}")


def space_from_spec(spec):
    if not isinstance(spec, dict):
        raise ConfigError(f"space spec must be an object, got {spec!r}")
    if "sum" in spec:
        s = spec["sum"]
        try:
            return SumSpace(space_from_spec(s["X"]), space_from_spec(s["Y"]),
                            norm_from_spec(s["norm"]))
        except KeyError as exc:
            raise ConfigError(f"sum spec missing {exc}") from None
    kind = spec.get("kind")
    if kind == "c01":
        return C01PL()
    if kind == "l1step":
        return L1Step()
    if kind == "finite":
        try:
            return FiniteDim(int(spec["n"]), to_number(spec.get("p", 2)))
        except (KeyError, ValueError, DomainError) as exc:
            raise ConfigError(f"bad finite space spec {spec!r}: {exc}") from None
    raise ConfigError(f"unknown space kind {kind!r}")


def vector_from_json(space, data):
    try:
        return space.vector_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad vector for {space.name}: {exc}") from None


def functional_from_json(space, data):
    try:
        return space.functional_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad functional for {space.name}: {exc}") from None


def slice_to_json(space, slice_: SliceSpec):
    return {"f": space.functional_to_json(slice_.f), "alpha": to_json(slice_.alpha)}


def slice_from_json(space, data) -> SliceSpec:
    try:
        return SliceSpec(functional_from_json(space, data["f"]), to_number(data["alpha"]))
    except KeyError as exc:
        raise ConfigError(f"slice missing {exc}") from None


def witness_to_json(space, w: DiametralWitness):
    return {"u": space.vector_to_json(w.u), "value": to_json(w.value),
            "distance": to_json(w.distance), "eps": to_json(w.eps),
            "alpha": to_json(w.alpha), "trace": _trace(w.trace)}


def certificate_to_json(space, cert: NonDeltaCertificate):
    return {"f": space.functional_to_json(cert.f), "alpha": to_json(cert.alpha),
            "eps": to_json(cert.eps), "k": to_json(cert.k),
            "contains_point": cert.contains_point, "trace": _trace(cert.trace)}


def certificate_from_json(space, data) -> NonDeltaCertificate:
    try:
        return NonDeltaCertificate(functional_from_json(space, data["f"]),
                                   to_number(data["alpha"]), to_number(data["eps"]),
                                   to_number(data.get("k", 1)),
                                   bool(data.get("contains_point", True)),
                                   data.get("trace", {}))
    except KeyError as exc:
        raise ConfigError(f"certificate missing {exc}") from None


def certificate_bundle(space, x, cert):
    """Self-contained falsifier input: space spec, point and certificate."""
    return {"space": space.to_spec(), "x": space.vector_to_json(x),
            "certificate": certificate_to_json(space, cert)}


def _trace(value):
    """Traces may hold nested traces, tuples and library objects; keep the
    JSON-friendly parts and stringify the rest."""
    if isinstance(value, dict):
        return {str(k): _trace(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_trace(v) for v in value]
    out = to_json(value)
    if isinstance(out, (str, int, float, bool)) or out is None:
        return out
    return repr(value)
