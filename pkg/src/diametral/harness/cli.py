"""Command line front end.

Exit codes: 0 when every validation passed, 2 when a violation was found,
1 on errors (bad input, refused constructions).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import DiametralError, DomainError
from ..numbers import close, to_json, to_number
from ..spaces import SliceSpec, check_witness, daugavet_witness
from ..sums import SumSpace, aoh_daugavet_point
from .demos import PIPELINES, demo
from .falsify import FalsifierBudget, run_falsifier
from .io import (certificate_from_json, dumps, load_json, norm_from_spec, slice_from_json,
                 space_from_spec, vector_from_json, witness_to_json)
from .report import Report, exit_code


def _classify(args):
    spec = load_json(args.norm)
    rep = Report("classify", spec)
    N = norm_from_spec(spec)
    with rep.timed("classify"):
        cls = N.classify()
    rep.outputs = {"variant": cls.variant, "star_constants": cls.star,
                   "pair": None if cls.pair is None else cls.pair.pair, "beta": cls.beta}
    return rep.to_dict()


def _sum_point(Z: SumSpace, v):
    """Rebuild the oracle point behind ``v = (a x, b y)``."""
    X, Y, N = Z.X, Z.Y, Z.N
    a, b = X.norm(v.x), Y.norm(v.y)
    x = X.scale(1 / a, v.x) if a != 0 else X.unit_vector()
    y = Y.scale(1 / b, v.y) if b != 0 else Y.unit_vector()
    if N.is_linf and close(a, 1) and not close(b, 1):
        return aoh_daugavet_point(N, X, Y, x, y, b=b)
    if N.is_linf and close(b, 1) and not close(a, 1):
        return aoh_daugavet_point(N, X, Y, x, y, a=a)
    return aoh_daugavet_point(N, X, Y, x, y, pair=(a, b))


def _witness(args):
    space_spec = load_json(args.space)
    space = space_from_spec(space_spec)
    x = vector_from_json(space, load_json(args.x))
    slice_ = slice_from_json(space, load_json(args.slice))
    eps = to_number(args.eps)
    rep = Report("witness", {"space": space_spec, "x": space.vector_to_json(x),
                             "slice": load_json(args.slice), "eps": to_json(eps)})
    with rep.timed("witness"):
        if isinstance(space, SumSpace):
            w = _sum_point(space, x).witness(slice_, eps)
        else:
            w = daugavet_witness(space, x, slice_, eps)
    rep.outputs["witness"] = witness_to_json(space, w)
    rep.verdict("witness", check_witness(space, x, SliceSpec(slice_.f, w.alpha), eps, w.u))
    return rep.to_dict()


def _demo(args):
    config = load_json(args.config) if args.config else None
    return demo(args.pipeline, config)


def _falsify(args):
    bundle = load_json(args.cert)
    try:
        space = space_from_spec(bundle["space"])
        x = vector_from_json(space, bundle["x"])
        cert = certificate_from_json(space, bundle["certificate"])
    except KeyError as exc:
        raise DomainError(f"certificate file missing {exc}") from None
    budget = FalsifierBudget(samples=args.samples, seed=args.seed)
    rep = Report("falsify", {"bundle": bundle, "samples": args.samples, "seed": args.seed})
    with rep.timed("falsify"):
        out = run_falsifier(space, x, cert, budget)
    rep.verdict("certificate", out.verdict)
    rep.outputs = {"best": out.best, "bound": cert.bound, "evaluations": out.evaluations}
    if out.violation is not None:
        rep.outputs["violation"] = {"u": space.vector_to_json(out.violation.u),
                                    "distance": out.violation.distance}
    return rep.to_dict()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diametral",
                                     description="Diametral points in absolute sums.")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    # accept --out after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify an absolute norm")
    p.add_argument("norm")
    p.set_defaults(run=_classify)

    p = sub.add_parser("witness", parents=[common], help="Daugavet witness for a point and a slice")
    p.add_argument("space")
    p.add_argument("x")
    p.add_argument("slice")
    p.add_argument("--eps", required=True)
    p.set_defaults(run=_witness)

    p = sub.add_parser("demo", parents=[common], help="run an end-to-end pipeline")
    p.add_argument("pipeline", choices=PIPELINES)
    p.add_argument("config", nargs="?")
    p.set_defaults(run=_demo)

    p = sub.add_parser("falsify", parents=[common], help="attack a certificate bundle")
    p.add_argument("cert")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_falsify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.run(args)
    except (DiametralError, ValueError) as exc:
        report = {"task": args.command, "status": "error",
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return exit_code(report)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
