"""Command-line interface.

Every command writes JSON (and, where tabular, CSV) files and prints their
paths. Without ``-o`` the files go to ``$BLASCHKE_HP_OUTDIR`` (default: the
current directory); ``-o -`` prints the JSON to stdout instead.

Exit status: 0 on success, 2 for invalid input or parameters, 3 when a
numerical procedure fails.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .cone import cone_norm, cone_profile, level_arcs
from .core import ZeroList, frostman_shift, make_product
from .dyadic import (DEFAULT_MAX_LEVEL, DyadicTree, build_tree, corollary_F_sum,
                     maximal_families, max_density, protas_dyadic_sum, separation_constant)
from .estimators import validate_alpha, validate_c, validate_p
from .exceptions import BlaschkeError, DepthWarning, NumericalError
from .lab import (FamilySpec, auto_config, functional_report, generate, rng_from,
                  stolz_counts, sweep)
from .norms import DEFAULT_CONFIG, QuadratureConfig

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3
SCHEMA_VERSION = 1
OUTDIR_ENV = "BLASCHKE_HP_OUTDIR"

KIND_ALIASES = {
    "radial": "radial_separated", "stolz": "stolz_confined", "dyadic": "dyadic_pattern",
    "random": "uniform_random", "single": "single_zero_scaling",
}


class UsageError(BlaschkeError):
    """Invalid command-line input."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _float_list(text: str) -> list[float]:
    try:
        return [float(eval_pow(t)) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def eval_pow(token: str) -> float:
    """Parse a float, also accepting ``2^-8`` style powers of two."""
    token = token.strip()
    if "^" in token:
        base, expo = token.split("^", 1)
        return float(base) ** float(expo)
    return float(token)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "."))


def _target(args, default_name: str) -> Path | None:
    """``None`` means stdout."""
    if args.output == "-":
        return None
    if args.output:
        return Path(args.output)
    return _outdir() / default_name


def _write(path: Path | None, text: str, out):
    if path is None:
        out.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    print(str(path), file=out)


def _sibling(path: Path | None, suffix: str) -> Path | None:
    return None if path is None else path.with_suffix(suffix)


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc})") from exc


def _read_zeros(path) -> ZeroList:
    data = _read_json(path)
    try:
        return ZeroList.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a zero list ({exc})") from exc


def _config(args) -> QuadratureConfig:
    over = {}
    for flag, name in (("boundary_samples", "boundary_samples"), ("radial_levels", "radial_levels"),
                       ("refine", "refinement_depth"), ("rel_tol", "rel_tol")):
        v = getattr(args, flag, None)
        if v is not None:
            over[name] = v
    return replace(DEFAULT_CONFIG, **over)


def _add_quadrature(p):
    g = p.add_argument_group("quadrature overrides")
    g.add_argument("--boundary-samples", dest="boundary_samples", type=int)
    g.add_argument("--radial-levels", dest="radial_levels", type=int)
    g.add_argument("--refine", type=int, help="sublevel refinement depth")
    g.add_argument("--rel-tol", dest="rel_tol", type=float)
    g.add_argument("--auto-config", action="store_true",
                   help="scale the sublevel depth with the degree")


def _add_family(p):
    p.add_argument("--kind", required=True,
                   choices=sorted(set(KIND_ALIASES) | set(KIND_ALIASES.values())))
    p.add_argument("--depth", type=int, help="radial depth J")
    p.add_argument("--beta", type=float, default=2.0, help="Stolz aperture for --kind stolz")
    p.add_argument("--counts", type=_int_list, help="per-level counts N_1,N_2,...")
    p.add_argument("--profile", choices=["one", "linear", "sqrt"])
    p.add_argument("--levels", type=_int_list, help="dyadic levels to fill")
    p.add_argument("--fill", type=float, default=1.0)
    p.add_argument("--n", type=int, help="number of random zeros")
    p.add_argument("--r-max", dest="r_max", type=float, default=0.99)
    p.add_argument("--delta", type=eval_pow)
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)


def _family_spec(args, grid: dict | None = None) -> FamilySpec:
    kind = KIND_ALIASES.get(args.kind, args.kind)
    params: dict = {}
    if kind == "radial_separated":
        params = {"depth": args.depth if args.depth is not None else 1, "theta": args.theta}
    elif kind == "stolz_confined":
        params = {"beta": args.beta}
        if args.counts is not None:
            params["counts"] = args.counts
        else:
            params["counts"] = stolz_counts(args.profile or "one", args.depth or 1)
    elif kind == "dyadic_pattern":
        params = {"levels": args.levels or [2], "fill": args.fill}
    elif kind == "uniform_random":
        params = {"n": args.n if args.n is not None else 1, "r_max": args.r_max}
    else:
        params = {"multiplicity": args.multiplicity, "theta": args.theta}
        if args.delta is not None:
            params["delta"] = args.delta
    params.update(grid or {})
    return FamilySpec(kind, params, seed=args.seed)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_gen(args, out) -> int:
    spec = _family_spec(args)
    zeros = generate(spec)
    sep = separation_constant(zeros) if zeros.degree >= 2 else None
    doc = {**zeros.to_dict(), "schema_version": SCHEMA_VERSION, "family": spec.to_dict()}
    _write(_target(args, "zeros.json"), _dump(doc), out)
    print(f"degree={zeros.degree} separation={sep if sep is None else repr(sep)}", file=out)
    return EXIT_OK


def cmd_norms(args, out) -> int:
    validate_p(args.p)
    validate_alpha(args.alpha)
    validate_c(args.c)
    zeros = _read_zeros(args.zeros)
    cfg = _config(args)
    if args.auto_config:
        cfg = auto_config(zeros.degree, cfg)
    rep = functional_report(zeros, args.p, args.alpha, args.c, cfg,
                            stolz_beta=args.stolz_beta, strict=not args.lenient)
    target = _target(args, Path(args.zeros).stem + ".norms.json")
    _write(target, _dump(rep.to_dict()), out)
    if target is not None:
        _write(_sibling(target, ".csv"), rep.csv_header() + rep.csv_row(), out)
    return EXIT_NUMERIC if rep.errors else EXIT_OK


def _dyadic_report(tree: DyadicTree, p: float, n_max: int | None) -> dict:
    top = max_density(tree)
    if n_max is None:
        n_max = max(1, top.bit_length())
    fams = maximal_families(tree, n_max)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fsum = corollary_F_sum(tree, p, n_max)
    return {
        "schema_version": SCHEMA_VERSION,
        "p": p,
        "N_max": n_max,
        "truncated": bool(fams and fams[-1].sectors),
        "tree": tree.dump(),
        "families": [f.to_dict() for f in fams],
        "corollary_F_sum": fsum,
        "protas_dyadic_sum": protas_dyadic_sum(tree, p),
    }


def cmd_dyadic(args, out) -> int:
    validate_p(args.p)
    data = _read_json(args.zeros)
    if "tree" in data or "sectors" in data:
        tree = DyadicTree.from_dump(data.get("tree", data))
    else:
        try:
            zeros = ZeroList.from_dict(data)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"{args.zeros}: neither a zero list nor a tree dump") from exc
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", DepthWarning)
            tree = build_tree(zeros, args.depth)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    doc = _dyadic_report(tree, args.p, args.n_max)
    _write(_target(args, Path(args.zeros).stem + ".dyadic.json"), _dump(doc), out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    validate_p(args.p)
    validate_alpha(args.alpha)
    validate_c(args.c)
    if args.deltas is not None:
        grid = {"deltas": args.deltas}
    elif args.depths is not None:
        grid = {"depths": args.depths}
    elif args.ns is not None:
        grid = {"ns": args.ns}
    else:
        grid = {"deltas": [2.0 ** -k for k in range(args.k_min, args.k_max + 1)]}
    spec = _family_spec(args, grid)
    cfg = None if args.auto_config else _config(args)
    rep = sweep(spec, args.p, args.alpha, args.c, cfg, functionals=args.functional,
                strict=not args.lenient)
    target = _target(args, "sweep.json")
    _write(target, _dump(rep.to_dict()), out)
    if target is not None:
        _write(_sibling(target, ".csv"), rep.to_csv(), out)
        for path in rep.write_series(target.parent / (target.stem + "_series"),
                                     args.functional or ("hp_norm_p",)):
            print(path, file=out)
    return EXIT_OK


def cmd_preimage(args, out) -> int:
    validate_p(args.p)
    zeros = _read_zeros(args.zeros)
    B = make_product(zeros)
    points = list(args.a or [])
    if args.random:
        rng = rng_from(args.seed)
        r = args.r_max * np.sqrt(rng.random(args.random))
        points += list(r * np.exp(2j * np.pi * rng.random(args.random)))
    if not points:
        raise UsageError("give at least one --a or --random N")
    rows = []
    for a in points:
        shifted = frostman_shift(B, a)
        z = shifted.zeros.expanded()
        resid = float(np.max(np.abs(B(z) - a)))
        rows.append({
            "a": {"re": a.real, "im": a.imag},
            "preimages": [{"re": float(w.real), "im": float(w.imag)} for w in z],
            "residual": resid,
            "sum": math.fsum(((1.0 - np.abs(z)) ** (1.0 - args.p)).tolist()),
            "shifted": shifted.to_dict(),
        })
    doc = {"schema_version": SCHEMA_VERSION, "p": args.p, "degree": B.degree, "results": rows}
    _write(_target(args, Path(args.zeros).stem + ".preimage.json"), _dump(doc), out)
    return EXIT_OK


def cmd_cone(args, out) -> int:
    validate_alpha(args.alpha)
    validate_p(args.p)
    zeros = _read_zeros(args.zeros)
    prof = cone_profile(zeros, args.alpha)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "alpha": args.alpha,
        "p": args.p,
        "cone_norm": cone_norm(zeros, args.alpha, args.p),
        "level_arcs": {str(N): level_arcs(zeros, args.alpha, N).to_dict()
                       for N in range(1, args.n_max + 1)},
    }
    target = _target(args, Path(args.zeros).stem + ".cone.json")
    _write(target, _dump(doc), out)
    if target is not None:
        _write(_sibling(target, ".csv"), prof.to_csv(), out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blaschke-hp",
                                     description="Derivatives of finite Blaschke products in H^p.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, alpha=True, c=True):
        p.add_argument("-o", "--output", help="output path, or - for stdout")
        p.add_argument("--p", type=float, default=0.75)
        if alpha:
            p.add_argument("--alpha", type=float, default=2.0)
        if c:
            p.add_argument("--c", type=float, default=0.5)

    g = sub.add_parser("gen", help="generate a zero list")
    _add_family(g)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    n = sub.add_parser("norms", help="all functionals of a zero list")
    n.add_argument("zeros")
    common(n)
    n.add_argument("--stolz-beta", dest="stolz_beta", type=float)
    n.add_argument("--lenient", action="store_true", help="accept wide sublevel enclosures")
    _add_quadrature(n)
    n.set_defaults(func=cmd_norms)

    d = sub.add_parser("dyadic", help="dyadic tree, maximal families and sums")
    d.add_argument("zeros", help="zero list or a previous dyadic report")
    common(d, alpha=False, c=False)
    d.add_argument("--depth", type=int, default=DEFAULT_MAX_LEVEL, help="deepest tree level")
    d.add_argument("--n-max", dest="n_max", type=int)
    d.set_defaults(func=cmd_dyadic)

    s = sub.add_parser("sweep", help="scaling sweep over a one-parameter family")
    _add_family(s)
    common(s)
    s.add_argument("--functional", action="append", default=[],
                   help="functional to fit (repeatable)")
    s.add_argument("--deltas", type=_float_list)
    s.add_argument("--depths", type=_int_list)
    s.add_argument("--ns", type=_int_list)
    s.add_argument("--k-min", dest="k_min", type=int, default=4)
    s.add_argument("--k-max", dest="k_max", type=int, default=12)
    s.add_argument("--lenient", action="store_true")
    _add_quadrature(s)
    s.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("preimage", help="solutions of B(z) = a and the preimage sum")
    pr.add_argument("zeros")
    common(pr, alpha=False, c=False)
    pr.add_argument("--a", type=_complex, action="append")
    pr.add_argument("--random", type=int, default=0, help="number of random a values")
    pr.add_argument("--r-max", dest="r_max", type=float, default=0.9)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_preimage)

    cn = sub.add_parser("cone", help="cone function profile and level arcs")
    cn.add_argument("zeros")
    common(cn, c=False)
    cn.add_argument("--n-max", dest="n_max", type=int, default=10)
    cn.set_defaults(func=cmd_cone)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BlaschkeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
