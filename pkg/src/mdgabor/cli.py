"""Command-line front end.

Exit codes: 0 success, 1 internal consistency failure, 2 malformed input,
3 input that violates a precondition of the requested test.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import _ext
from .constructor import construct_orthonormal, construct_parseval, dual_completion
from .correlation import autocorrelation_table, cross_correlation_table
from .errors import GaborError, PreconditionError, SchemaError
from .frame_analysis import (
    analyze,
    dual_check,
    perturbation_bound,
    randomized_rayleigh_bounds,
)
from .io import dumps, load_matrix, load_system
from .kframe_model import (
    build_model,
    douglas_range_check,
    k_minimality_check,
    kframe_verdict,
    range_projector,
    spectral_frame_bounds,
)
from .zak import default_grid, frame_check_NM, zak_csv

FORMATS = ("text", "json", "csv")


@dataclass
class RunConfig:
    command: str
    tol: float = 1e-10
    grid: int | None = None
    trials: int = 200
    seed: int = 0
    format: str = "text"
    periods: int = 1

    def validate(self):
        if self.tol < 0:
            raise PreconditionError("--tol must be >= 0")
        if self.grid is not None and self.grid < 1:
            raise PreconditionError("--grid must be >= 1")
        if self.trials < 1:
            raise PreconditionError("--trials must be >= 1")
        if self.periods < 1:
            raise PreconditionError("--periods must be >= 1")


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    if fmt == "csv":
        keys = list(report)
        return ",".join(keys) + "\n" + ",".join(str(report[k]) for k in keys)
    width = max(len(k) for k in report)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in report.items())


def cmd_analyze(args, cfg):
    sysg = load_system(args.system)
    rep = analyze(sysg, cfg.tol).to_dict()
    rep = {"L": sysg.L, "M": sysg.M, "N": sysg.N, "tol": cfg.tol, **rep}
    if args.table:
        return autocorrelation_table(sysg).to_csv()
    return _render(rep, cfg.format)


def cmd_construct(args, cfg):
    build = construct_parseval if args.kind == "parseval" else construct_orthonormal
    return dumps(build(args.L, args.M, args.N).to_dict())


def cmd_zak(args, cfg):
    sysg = load_system(args.system)
    T = cfg.grid or default_grid(sysg)
    if args.check_frame:
        res = frame_check_NM(sysg, T, cfg.tol)
        return _render({"A_est": res.A_est, "B_est": res.B_est, "is_frame": res.is_frame, "grid": res.grid}, cfg.format)
    return zak_csv(sysg, T)


def cmd_perturb(args, cfg):
    g, h = load_system(args.system_g), load_system(args.system_h)
    res = perturbation_bound(g, h, args.A, args.B)
    if res is None:
        rep = {"inconclusive": True, "A": None, "B": None, "R": None}
    else:
        rep = {"inconclusive": False, "A": float(res[0]), "B": float(res[1]), "R": float(res[2])}
    return _render(rep, cfg.format)


def cmd_dual(args, cfg):
    g, h = load_system(args.system_g), load_system(args.system_h)
    if args.complete:
        g2, h2 = dual_completion(g, h)
        return dumps({"g": g2.to_dict(), "h": h2.to_dict()})
    ok = dual_check(cross_correlation_table(g, h, exact=cfg.tol == 0), cfg.tol)
    return _render({"dual": ok, "tol": cfg.tol}, cfg.format)


def cmd_oracle(args, cfg):
    sysg = load_system(args.system)
    lo, hi = randomized_rayleigh_bounds(sysg, cfg.trials, args.radius, cfg.seed)
    rep = {"min_ratio": lo, "max_ratio": hi, "trials": cfg.trials, "radius": args.radius, "seed": cfg.seed}
    return _render(rep, cfg.format)


def cmd_kframe(args, cfg):
    sysg = load_system(args.system)
    model = build_model(sysg, cfg.periods)
    if args.K == "identity":
        K = np.eye(model.P, dtype=np.complex128)
    elif args.K == "range-projector":
        K = range_projector(model.synthesis)
    else:
        K = load_matrix(args.K)
    tol = args.rank_tol
    v = kframe_verdict(model, K, tol)
    A, B = spectral_frame_bounds(model)
    rep = {
        "model_P": model.P,
        "atom_count": model.atom_count,
        "range_inclusion": douglas_range_check(model, K, tol),
        "is_kframe": v.is_kframe,
        "A_opt": v.A_opt,
        "B": v.B,
        "zero_operator": v.zero_operator,
        "k_minimal": k_minimality_check(model, tol),
        "spectral_A": A,
        "spectral_B": B,
        "rank_tol": tol,
    }
    return _render(rep, cfg.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="equality tolerance (0 selects exact mode)")
    common.add_argument("--grid", type=int, default=None, help="Zak grid size T")
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--periods", type=int, default=1, help="finite model size in units of lcm(M, N)")

    p = argparse.ArgumentParser(prog="mdgabor", description="Multi-window discrete Gabor frame toolbox")
    p.add_argument("--version", action="version", version=f"%(prog)s (kernels: {_ext.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="frame verdicts from the correlation table")
    a.add_argument("system")
    a.add_argument("--table", action="store_true", help="dump the correlation table as CSV instead")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", parents=[common], help="emit a Parseval frame or orthonormal basis")
    c.add_argument("kind", choices=("parseval", "onb"))
    c.add_argument("--L", type=int, required=True)
    c.add_argument("--M", type=int, required=True)
    c.add_argument("--N", type=int, required=True)
    c.set_defaults(func=cmd_construct)

    z = sub.add_parser("zak", parents=[common], help="Zak transform samples (CSV) or the N = M frame test")
    z.add_argument("system")
    z.add_argument("--check-frame", action="store_true")
    z.set_defaults(func=cmd_zak)

    q = sub.add_parser("perturb", parents=[common], help="frame bounds of a perturbed system")
    q.add_argument("system_g")
    q.add_argument("system_h")
    q.add_argument("--A", type=float, required=True)
    q.add_argument("--B", type=float, required=True)
    q.set_defaults(func=cmd_perturb)

    d = sub.add_parser("dual", parents=[common], help="dual test, or dual completion with --complete")
    d.add_argument("system_g")
    d.add_argument("system_h")
    d.add_argument("--complete", action="store_true")
    d.set_defaults(func=cmd_dual)

    o = sub.add_parser("oracle", parents=[common], help="randomized energy ratios by direct enumeration")
    o.add_argument("system")
    o.add_argument("--radius", type=int, default=16)
    o.set_defaults(func=cmd_oracle)

    k = sub.add_parser("kframe", parents=[common], help="K-frame verdict in the finite model")
    k.add_argument("system")
    k.add_argument("K", help="operator JSON file, or 'identity' / 'range-projector'")
    k.add_argument("--rank-tol", type=float, default=1e-9)
    k.set_defaults(func=cmd_kframe)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.tol, args.grid, args.trials, args.seed, args.format, args.periods)
    try:
        cfg.validate()
        out = args.func(args, cfg)
    except SchemaError as exc:
        print(f"error: schema: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: precondition: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except GaborError as exc:
        print(f"error: internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
