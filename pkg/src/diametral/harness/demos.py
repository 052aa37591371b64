"""End-to-end pipelines, one per result, each producing a :class:`Report`.

Every pipeline takes a JSON-style config; missing keys fall back to
``DEFAULTS``.  The resolved config is stored in the report, so
``demo(report["task"], report["inputs"])`` replays it.
"""

from __future__ import annotations

import copy
from fractions import Fraction

from ..errors import ConfigError, DiametralError, NotApplicable, VerificationFailed
from ..norm2 import LINF, L1
from ..numbers import INF, to_json, to_number
from ..spaces import NonDeltaCertificate, SliceSpec, brute_slice_sup, check_witness
from ..sums import (SumSpace, SumVector, aoh_daugavet_point, combine_non_daugavet_certificates,
                    combine_non_deltak_certificates, component_witness_from_sum,
                    conjugate_pair_exists, daugavet_point, delta_point_infty, deltak_point,
                    lift_non_delta_certificate)
from .falsify import FalsifierBudget, run_falsifier
from .io import (certificate_bundle, functional_from_json, norm_from_spec, space_from_spec,
                 vector_from_json, witness_to_json)
from .report import Report
from .sampling import make_rng, random_slice, slice_containing

C01 = {"kind": "c01"}
L2_2 = {"kind": "finite", "n": 2, "p": "2"}
E1 = {"coords": ["1", "0"]}
E1_CERT = {"f": E1, "alpha": "1/4", "eps": "1/2"}
EPS = ["1/2", "1/10", "1/100"]

DEFAULTS = {
    "thm22": {"norm": {"kind": "lp", "p": "1"}, "X": C01, "Y": C01, "x": None, "y": None,
              "slices": 20, "eps": EPS, "seed": 0},
    "prop23": {"norm": {"kind": "pl", "knots": [["0", "1"], ["2/3", "2/3"], ["1", "1"]]},
               "pair": ["1", "0"], "X": C01, "Y": L2_2, "x": None, "y": E1,
               "slices": 20, "eps": EPS, "seed": 0},
    "prop24": {"X": C01, "Y": L2_2, "x": None, "y": E1, "b": "3/10",
               "slices": 20, "eps": EPS, "seed": 0},
    "thm31": {"norm": {"kind": "lp", "p": "1"}, "X": C01, "Y": C01, "x": None, "y": None,
              "slices": 10, "eps": EPS, "seed": 0},
    "thm32": {"X": C01, "Y": L2_2, "x": None, "y": E1, "b": "3/10", "slices": 10, "eps": EPS,
              "cert_space": L2_2, "cert_x": E1, "cert_y": E1, "cert_X": E1_CERT,
              "cert_Y": E1_CERT, "samples": 100_000, "seed": 0},
    "thm41": {"norm": {"kind": "lp", "p": "1"}, "a": None, "b": None, "X": L2_2, "x": E1,
              "cert": E1_CERT, "Y": C01, "y": None, "samples": 100_000, "seed": 0},
    "ex43": {"k": ["2", "4"], "X": L2_2, "x": E1, "cert": E1_CERT, "Y": C01, "y": None,
             "slices": 20, "eps": EPS, "samples": 100_000, "seed": 0},
    "prop44a": {"p": "2", "q": "2", "inner_X": L2_2, "inner_x": E1, "inner_Y": C01,
                "slices": 10, "eps": EPS, "seed": 0},
    "prop44b": {"p": "2", "q": "2", "X": L2_2, "Y": L2_2, "x": E1, "y": E1,
                "cert_X": E1_CERT, "cert_Y": E1_CERT, "samples": 100_000, "seed": 0},
    "prop45": {"a": "2", "b": "2"},
}

PIPELINES = tuple(DEFAULTS)
TRACE_KEEP = 3
BRUTE_TOL = 1e-6


def _vec(space, data):
    return space.unit_vector() if data is None else vector_from_json(space, data)


def _cert(space, data, k=1):
    return NonDeltaCertificate(functional_from_json(space, data["f"]), to_number(data["alpha"]),
                               to_number(data["eps"]), to_number(data.get("k", k)),
                               bool(data.get("contains_point", True)))


def _eps(cfg):
    return [to_number(e) for e in cfg["eps"]]


def _budget(cfg):
    return FalsifierBudget(samples=int(cfg.get("samples", 100_000)), seed=int(cfg.get("seed", 0)))


def _witness_run(rep, key, space, point_vec, make_slice, query, cfg):
    """Query ``slices x eps`` witnesses and tally exact rechecks."""
    rng = make_rng(int(cfg["seed"]))
    oks, traces = [], []
    for _ in range(int(cfg["slices"])):
        for eps in _eps(cfg):
            sl = make_slice(rng)
            try:
                w = query(sl, eps)
            except VerificationFailed as exc:
                oks.append(False)
                traces.append({"error": str(exc)})
                continue
            oks.append(check_witness(space, point_vec, SliceSpec(sl.f, w.alpha), eps, w.u))
            if len(traces) < TRACE_KEEP:
                traces.append(witness_to_json(space, w))
    rep.tally(key, oks)
    rep.traces[key] = traces


def _check_certificate(rep, key, space, x, cert, cfg):
    """Falsify, and compare with the exact slice supremum where one exists."""
    with rep.timed(f"{key}_falsify"):
        out = run_falsifier(space, x, cert, _budget(cfg))
    rep.verdict(f"{key}_falsifier", out.verdict)
    rep.outputs[f"{key}_search_best"] = out.best
    rep.outputs[f"{key}_claimed_bound"] = cert.bound
    if space.brute_oracle:
        with rep.timed(f"{key}_brute"):
            sup = brute_slice_sup(space, x, cert.slice, "exact")
        rep.outputs[f"{key}_exact_sup"] = sup
        rep.verdict(f"{key}_exact_bound", sup < cert.bound)
        rep.verdict(f"{key}_search_vs_exact",
                    "valid" if out.best <= sup + BRUTE_TOL else "mismatch")
    else:
        rep.verdict(f"{key}_exact_bound", "skipped")
    rep.outputs[key] = certificate_bundle(space, x, cert)
    rep.traces[key] = cert.trace


def _input_certificate(rep, key, space, x, cert):
    """Check an input certificate by the exact route when one exists."""
    if not space.brute_oracle:
        rep.verdict(key, "unchecked")
        return
    sup = brute_slice_sup(space, x, cert.slice, "exact")
    inside = (not cert.contains_point) or space.pair(cert.f, x) > 1 - cert.alpha
    rep.verdict(key, bool(sup < cert.bound and inside))


# pipelines ---------------------------------------------------------------------

def _thm22(cfg, rep):
    N = norm_from_spec(cfg["norm"])
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    cls = N.classify()
    rep.outputs["classification"] = {"variant": cls.variant, "star": cls.star,
                                     "pair": None if cls.pair is None else cls.pair.pair}
    pt = aoh_daugavet_point(N, X, Y, _vec(X, cfg["x"]), _vec(Y, cfg["y"]))
    _daugavet_sum_run(rep, pt, cfg)


def _daugavet_sum_run(rep, pt, cfg):
    Z = pt.space
    rep.outputs["point"] = Z.vector_to_json(pt.vector)
    rep.outputs["pair"] = pt.info["pair"]
    with rep.timed("witnesses"):
        _witness_run(rep, "sum_witnesses", Z, pt.vector, lambda rng: random_slice(Z, rng),
                     pt.witness, cfg)


def _prop23(cfg, rep):
    N = norm_from_spec(cfg["norm"])
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    pair = tuple(to_number(v) for v in cfg["pair"])
    pt = aoh_daugavet_point(N, X, Y, _vec(X, cfg["x"]), _vec(Y, cfg["y"]), pair=pair)
    _daugavet_sum_run(rep, pt, cfg)


def _prop24(cfg, rep):
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    pt = aoh_daugavet_point(LINF, X, Y, _vec(X, cfg["x"]), _vec(Y, cfg["y"]),
                            b=to_number(cfg["b"]))
    _daugavet_sum_run(rep, pt, cfg)


def _thm31(cfg, rep):
    N = norm_from_spec(cfg["norm"])
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    pt = aoh_daugavet_point(N, X, Y, _vec(X, cfg["x"]), _vec(Y, cfg["y"]))
    Z = pt.space
    rep.outputs["point"] = Z.vector_to_json(pt.vector)
    for which, C, v in (("X", X, pt.vector.x), ("Y", Y, pt.vector.y)):
        if C.norm(v) == 0:
            rep.verdict(f"component_{which}", "skipped")
            continue
        target = C.scale(1 / C.norm(v), v)
        with rep.timed(f"component_{which}"):
            _witness_run(rep, f"component_{which}", C, target, lambda rng, C=C: random_slice(C, rng),
                         lambda sl, eps, which=which: component_witness_from_sum(Z, pt, which, sl, eps),
                         cfg)


def _thm32(cfg, rep):
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    pt = aoh_daugavet_point(LINF, X, Y, _vec(X, cfg["x"]), _vec(Y, cfg["y"]),
                            b=to_number(cfg["b"]))
    Z = pt.space
    rep.outputs["point"] = Z.vector_to_json(pt.vector)
    with rep.timed("component_X"):
        _witness_run(rep, "component_X", X, pt.vector.x, lambda rng: random_slice(X, rng),
                     lambda sl, eps: component_witness_from_sum(Z, pt, "X", sl, eps), cfg)
    # second case: both components of norm one and neither Daugavet
    C = space_from_spec(cfg["cert_space"])
    x, y = _vec(C, cfg["cert_x"]), _vec(C, cfg["cert_y"])
    cx, cy = _cert(C, cfg["cert_X"]), _cert(C, cfg["cert_Y"])
    cx, cy = cx.replace(contains_point=False), cy.replace(contains_point=False)
    _input_certificate(rep, "input_X", C, x, cx)
    _input_certificate(rep, "input_Y", C, y, cy)
    Zc = SumSpace(C, C, LINF)
    cert = combine_non_daugavet_certificates(Zc, cx, cy)
    _check_certificate(rep, "combined", Zc, SumVector(x, y), cert, cfg)


def _thm41(cfg, rep):
    N = norm_from_spec(cfg["norm"])
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    if cfg["a"] is None or cfg["b"] is None:
        cls = N.classify()
        if not cls.is_aoh:
            raise NotApplicable(f"{N.name} has property (alpha): no sphere pair to lift to")
        a, b = cls.pair.a, cls.pair.b
    else:
        a, b = to_number(cfg["a"]), to_number(cfg["b"])
    rep.outputs["pair"] = (a, b)
    x, y = _vec(X, cfg["x"]), _vec(Y, cfg["y"])
    certX = _cert(X, cfg["cert"])
    _input_certificate(rep, "input", X, x, certX)
    Z = SumSpace(X, Y, N)
    cert = lift_non_delta_certificate(Z, a, b, x, y, certX)
    z = SumVector(X.scale(a, x), Y.scale(b, y))
    rep.verdict("contains_point", Z.pair(cert.f, z) > 1 - cert.alpha)
    _check_certificate(rep, "lifted", Z, z, cert, cfg)


def _ex43(cfg, rep):
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    x, y = _vec(X, cfg["x"]), _vec(Y, cfg["y"])
    certX = _cert(X, cfg["cert"])
    _input_certificate(rep, "input", X, x, certX)
    Z = SumSpace(X, Y, L1)
    yo = daugavet_point(Y, y)
    for kv in cfg["k"]:
        k = to_number(kv)
        zp = deltak_point(Z, k, x, yo)
        key = f"k={kv}"
        with rep.timed(f"{key}_witnesses"):
            _witness_run(rep, f"{key}_witnesses", Z, zp.vector,
                         lambda rng: slice_containing(Z, zp.vector, rng), zp.witness, cfg)
        cert = lift_non_delta_certificate(Z, 1 - 1 / k, 1 / k, x, y, certX)
        _check_certificate(rep, f"{key}_not_delta", Z, zp.vector, cert, cfg)


def _prop44a(cfg, rep):
    p, q = to_number(cfg["p"]), to_number(cfg["q"])
    IX, IY = space_from_spec(cfg["inner_X"]), space_from_spec(cfg["inner_Y"])
    inner = SumSpace(IX, IY, L1)
    yo = daugavet_point(IY, IY.unit_vector())
    ix = _vec(IX, cfg["inner_x"])
    zx = deltak_point(inner, p, ix, yo)
    zy = deltak_point(inner, q, ix, yo)
    Z = SumSpace(inner, inner, LINF)
    dp = delta_point_infty(Z, p, q, zx, zy)
    rep.outputs["point"] = Z.vector_to_json(dp.vector)
    with rep.timed("witnesses"):
        _witness_run(rep, "delta_witnesses", Z, dp.vector,
                     lambda rng: slice_containing(Z, dp.vector, rng), dp.witness, cfg)


def _prop44b(cfg, rep):
    p, q = to_number(cfg["p"]), to_number(cfg["q"])
    X, Y = space_from_spec(cfg["X"]), space_from_spec(cfg["Y"])
    x, y = _vec(X, cfg["x"]), _vec(Y, cfg["y"])
    cx, cy = _cert(X, cfg["cert_X"], k=p), _cert(Y, cfg["cert_Y"], k=q)
    _input_certificate(rep, "input_X", X, x, cx)
    _input_certificate(rep, "input_Y", Y, y, cy)
    Z = SumSpace(X, Y, LINF)
    cert = combine_non_deltak_certificates(Z, p, cx, q, cy)
    rep.outputs["lambda"] = cert.trace["lambda"]
    rep.verdict("contains_point", Z.pair(cert.f, SumVector(x, y)) > 1 - cert.alpha)
    _check_certificate(rep, "combined", Z, SumVector(x, y), cert, cfg)


def _prop45(cfg, rep):
    a, b = to_number(cfg["a"]), to_number(cfg["b"])
    pair = conjugate_pair_exists(a, b)
    rep.outputs["conjugate_pair"] = pair
    expected = INF not in (a, b) and 1 / Fraction(a) + 1 / Fraction(b) >= 1
    ok = (pair is not None) == expected
    if pair is not None:
        p, q = pair
        ok = ok and p >= a and q >= b and 1 / p + 1 / q == 1
    rep.verdict("arithmetic", ok)


_RUNNERS = {
    "thm22": _thm22, "prop23": _prop23, "prop24": _prop24, "thm31": _thm31, "thm32": _thm32,
    "thm41": _thm41, "ex43": _ex43, "prop44a": _prop44a, "prop44b": _prop44b, "prop45": _prop45,
}


def resolve_config(pipeline: str, config=None) -> dict:
    if pipeline not in DEFAULTS:
        raise ConfigError(f"unknown pipeline {pipeline!r}; choose from {', '.join(PIPELINES)}")
    cfg = copy.deepcopy(DEFAULTS[pipeline])
    for key, value in (config or {}).items():
        if key not in cfg:
            raise ConfigError(f"unknown key {key!r} for pipeline {pipeline}")
        cfg[key] = value
    return cfg


def demo(pipeline: str, config=None) -> dict:
    """Run one pipeline; refusals and library errors land in the report."""
    cfg = resolve_config(pipeline, config)
    rep = Report(pipeline, to_json(cfg))
    try:
        with rep.timed("total"):
            _RUNNERS[pipeline](cfg, rep)
    except DiametralError as exc:
        rep.error = {"type": type(exc).__name__, "message": str(exc)}
    return rep.to_dict()


def replay(report: dict) -> dict:
    return demo(report["task"], report["inputs"])


__all__ = ["DEFAULTS", "PIPELINES", "demo", "replay", "resolve_config"]
