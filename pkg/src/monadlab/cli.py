"""Command line entry point.

Every flag can also be set through an environment variable with the prefix
``MONADLAB_`` (``MONADLAB_FIELD``, ``MONADLAB_SEED``, ...); flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .field import FieldError
from .groebner import Ideal, groebner_basis
from .modules import GradedMatrix, ModulePresentation
from .pipelines import PipelineConfig, PipelineError, Report, render_report, run_pipeline
from .resolutions import betti_table, free_resolution, minimize_resolution
from .ring import ParseError

ENV_PREFIX = "MONADLAB_"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _env(name: str, default):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    return type(default)(raw) if not isinstance(default, bool) else raw.lower() in ("1", "true", "yes")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=_env("field", "fp:31991"), help="qq or fp:<p> (default fp:31991)")
    p.add_argument("--seed", type=int, default=_env("seed", 0))
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default=_env("format", "text"))
    p.add_argument("--max-res-length", type=int, default=_env("max_res_length", 6))
    p.add_argument("--fiber-samples", type=int, default=_env("fiber_samples", 50))
    p.add_argument("--timings", action="store_true", default=_env("timings", False),
                   help="add wall-clock timings (reports are then no longer byte-identical)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="monadlab", description="Monads, resolutions and bundles on P^4.")
    sub = ap.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verification pipelines").add_subparsers(dest="target", required=True)
    verify.add_parser("monad-g", parents=[common], help="the rank-5 monad G and its resolutions")
    ex = verify.add_parser("example", parents=[common], help="one of the generator-matrix examples")
    ex.add_argument("--id", required=True, choices=("3.1", "3.2", "3.3", "3.4"))
    verify.add_parser("sigma-relation", parents=[common], help="coker of two sections of G(1)")

    build = sub.add_parser("build", help="constructions").add_subparsers(dest="target", required=True)
    cb = build.add_parser("conic-bundle", parents=[common], help="surface from 4 sections of G(1)")
    cb.add_argument("--sections", type=int, default=_env("sections", 4))
    cb.add_argument("--retries", type=int, default=_env("retries", 5))

    tables = sub.add_parser("tables", help="cohomology tables").add_subparsers(dest="target", required=True)
    tables.add_parser("cohomology", parents=[common], help="scaffold and local-duality tables")

    gb = sub.add_parser("gb", parents=[common], help="Groebner basis of an ideal file")
    gb.add_argument("file", type=Path)
    gb.add_argument("--order", choices=("grevlex", "glex"), default=None)
    for name, text in (("resolve", "free resolution of coker of a matrix file"),
                       ("betti", "minimal Betti table of coker of a matrix file")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", type=Path)
    return ap


def _config(args, **extra) -> PipelineConfig:
    return PipelineConfig(field=args.field, seed=args.seed, max_res_length=args.max_res_length,
                          fmt=args.fmt, fiber_samples=args.fiber_samples, timings=args.timings, **extra)


def _run_gb(args, cfg: PipelineConfig) -> Report:
    text = args.file.read_text()
    I = Ideal.from_text(text)
    rep = Report("gb", {**cfg.echo(), "field": I.ring.field.tag(), "file": args.file.name})
    B = groebner_basis(I, order=args.order)
    rep.check("S-pairs reduce to zero", B.s_pairs_reduce_to_zero())
    rep.value("order", B.order.tag)
    rep.value("basis", [g.to_string() for g in B])
    rep.value("leading_terms", [str(m) for m in B.leading_terms])
    return rep


def _run_resolution(args, cfg: PipelineConfig, minimal_only: bool) -> Report:
    R = cfg.ring
    M = GradedMatrix.from_text(args.file.read_text(), R)
    rep = Report("betti" if minimal_only else "resolve", {**cfg.echo(), "file": args.file.name})
    C = free_resolution(ModulePresentation(M), cap=cfg.max_res_length)
    if not minimal_only:
        rep.value("ranks", C.ranks())
    rep.check("composites vanish", C.composites_vanish())
    Cm = minimize_resolution(C)
    rep.check("minimal", Cm.is_minimal())
    rep.check("length at most 5", Cm.length <= R.nvars)
    B = betti_table(Cm)
    rep.betti("betti", B)
    if not minimal_only:
        rep.value("differentials", [f"{d.target!r} <- {d.source!r}" for d in Cm.maps])
    return rep


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            name = {"monad-g": "verify-monad-g", "example": "verify-example",
                    "sigma-relation": "verify-sigma-relation"}[args.target]
            extra = {"example": args.id} if args.target == "example" else {}
            cfg = _config(args, **extra)
            rep = run_pipeline(name, cfg)
        elif args.command == "build":
            cfg = _config(args, sections=args.sections, retries=args.retries)
            rep = run_pipeline("build-conic-bundle", cfg)
        elif args.command == "tables":
            cfg = _config(args)
            rep = run_pipeline("cohomology-tables", cfg)
        elif args.command == "gb":
            cfg = _config(args)
            rep = _run_gb(args, cfg)
        else:
            cfg = _config(args)
            rep = _run_resolution(args, cfg, args.command == "betti")
    except (PipelineError, ParseError, FieldError, ValueError, OSError) as exc:
        print(f"monadlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(render_report(rep, cfg.fmt))
    sys.stdout.flush()
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
