"""Command-line front end.

Subcommands map one-to-one onto the library modules: gauss and superchar for
exponential-sum plots, gd for torus-image samples, weyl for the exact/numeric
character-sum pair, rcfp and torsion for lattice-period plots, find-element
for the order-d matrix search. Every run resolves its full configuration
first, computes in memory, then writes artifacts (points.csv, plot.png,
frames/, meta.json) under --out; a failed run writes nothing.

Exit codes: 0 ok, 2 usage, 3 budget exhausted, 4 numeric tolerance unmet,
5 I/O failure. GPERIODS_WORKERS is recorded in meta.json and never affects
output bytes.
"""

from __future__ import annotations

import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .cm import (
    field_data,
    lattice_context,
    ok_element,
    quotient_order,
    rcfp_plot,
    torsion_coordinate_plot,
)
from .errors import (
    BadExponent,
    BudgetExceeded,
    ClassNumberNotOne,
    DimensionMismatch,
    EmptyPointSet,
    IdentityTorsionPoint,
    ImpossibleOrder,
    ModulusMismatch,
    NotADivisor,
    NotAUnit,
    NotFound,
    NotInvertible,
    NotMonic,
    NotPrime,
    NotSquarefree,
    PoleAtLattice,
    ToleranceOutOfRange,
)
from .laurent import cyclotomic, reduction_table, sample_image, x_pow_minus_one
from .modring import check_cyclotomic_vanishing, find_matrix, mat_order
from .periods import (
    PlotPoint,
    frame_batches,
    gaussian_plot,
    period_spec,
    superchar_spec,
    supercharacter_plot,
)
from .pointio import write_meta, write_points_csv
from .render import render_scatter, render_style, save_png, write_frames
from .weyl import alpha_vector, weyl_instance, weyl_sum_exact, weyl_sum_numeric

import argparse

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_NUMERIC = 4
EXIT_IO = 5

_USAGE_ERRORS = (
    ValueError,
    NotAUnit,
    NotInvertible,
    ImpossibleOrder,
    NotMonic,
    NotADivisor,
    NotPrime,
    DimensionMismatch,
    NotSquarefree,
    ClassNumberNotOne,
    ModulusMismatch,
    ToleranceOutOfRange,
    IdentityTorsionPoint,
    BadExponent,
    EmptyPointSet,
)
_BUDGET_ERRORS = (BudgetExceeded, NotFound)
_NUMERIC_ERRORS = (PoleAtLattice, ArithmeticError)

_FORMATS = ("csv", "png", "json")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _rows(text: str, m: int) -> list[list[int]]:
    flat = _ints(text)
    if len(flat) != m * m:
        raise ValueError(f"matrix literal needs {m * m} entries, got {len(flat)}")
    return [flat[i * m : (i + 1) * m] for i in range(m)]


def _formats(text: str) -> frozenset[str]:
    parts = frozenset(t.strip() for t in text.split(",") if t.strip())
    bad = parts - set(_FORMATS)
    if bad:
        raise ValueError(f"unknown formats {sorted(bad)}; choose from {_FORMATS}")
    return parts


def _workers() -> int:
    raw = os.environ.get("GPERIODS_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gperiods",
        description="Plots and exact checks for cyclotomic and lattice period sums.",
    )
    parser.add_argument("--version", action="version", version=f"gperiods {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    common.add_argument(
        "--formats",
        type=_formats,
        default=frozenset(_FORMATS),
        help="comma list from csv,png,json (meta.json is always written)",
    )
    common.add_argument("--point-radius", type=float, default=2.0, help="marker radius, px")
    common.add_argument("--size", type=int, default=800, help="image width and height, px")

    p = sub.add_parser("gauss", parents=[common], help="Gaussian-period plot over Z/nZ")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--color-mod", type=int, default=1)
    p.add_argument("--frames", type=int, default=0, help="batch size C for a frame sequence")
    p.add_argument("--budget", type=int, default=20_000_000)

    p = sub.add_parser("superchar", parents=[common], help="supercharacter plot over (Z/nZ)^m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--matrix", type=str, required=True, help="m*m ints, row-major, comma-separated")
    p.add_argument("--color-mod", type=int, default=1)
    p.add_argument("--budget", type=int, default=20_000_000)

    p = sub.add_parser("gd", parents=[common], help="sample the torus image that fills the d-cusped hypocycloid")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, required=True, help="grid samples per torus axis")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("weyl", parents=[common], help="exact vs numeric character sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--matrix", type=str, required=True)
    p.add_argument("--v", type=str, required=True, help="integer weights, comma-separated")
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--tol", type=float, default=1e-4, help="relative agreement tolerance")

    p = sub.add_parser("rcfp", parents=[common], help="lattice-period plot of all m-torsion points")
    p.add_argument("--field", type=int, required=True, help="squarefree d of Q(sqrt(-d))")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--element", type=str, required=True, help="a,b for a + b*alpha")
    p.add_argument("--color-mod", type=int, default=1)
    p.add_argument("--weber", action="store_true", help="apply the unit-invariant power per term")
    p.add_argument("--rescale", action="store_true", help="map values into the unit disc")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--budget", type=int, default=1_000_000)

    p = sub.add_parser("torsion", parents=[common], help="wp or wp' at all m-torsion points")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--coordinate", choices=("x", "y"), default="x")
    p.add_argument("--color-mod", type=int, default=1)
    p.add_argument("--s-max", type=float, default=8.0)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--budget", type=int, default=1_000_000)

    p = sub.add_parser("find-element", parents=[common], help="search GL_m(Z/nZ) for an order-d element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--require-vanishing", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)

    return parser


def _run_gauss(args) -> dict:
    if args.n > args.budget:
        raise BudgetExceeded(f"n = {args.n} exceeds budget {args.budget}")
    spec = period_spec(args.n, args.omega, args.color_mod)
    points = gaussian_plot(spec)
    batches = frame_batches(len(points), args.frames) if args.frames > 0 else None
    return {
        "points": points,
        "index_arity": 1,
        "color_mod": args.color_mod,
        "batches": batches,
        "results": {"d": spec.d, "n": spec.n, "omega": spec.omega},
    }


def _run_superchar(args) -> dict:
    spec = superchar_spec(_rows(args.matrix, args.m), args.n, args.color_mod)
    points = supercharacter_plot(spec, budget=args.budget)
    return {
        "points": points,
        "index_arity": args.m,
        "color_mod": args.color_mod,
        "results": {"d": spec.d, "n": spec.n, "m": spec.m},
    }


def _run_gd(args) -> dict:
    if args.d < 2:
        raise ValueError("d must be >= 2")
    poly, rem = x_pow_minus_one(args.d).divmod_monic(cyclotomic(1))
    assert not rem.coeffs
    table = reduction_table(poly, args.d)
    vals = sample_image(table, args.samples, seed=args.seed)
    points = [PlotPoint(index=i, value=complex(v), color=0) for i, v in enumerate(vals)]
    return {
        "points": points,
        "index_arity": 1,
        "color_mod": 1,
        "results": {"d": args.d, "samples_per_axis": args.samples, "seed": args.seed},
    }


def _run_weyl(args) -> dict:
    inst = weyl_instance(args.n, _rows(args.matrix, args.m), _ints(args.v))
    exact = weyl_sum_exact(inst)
    numeric = weyl_sum_numeric(inst, budget=args.budget)
    agree = abs(numeric - exact) <= args.tol * args.n**args.m
    payload = {
        "exact": exact,
        "numeric": [numeric.real, numeric.imag],
        "agree": agree,
        "alpha": list(alpha_vector(inst)),
        "n": args.n,
        "m": args.m,
        "s": inst.s,
    }
    return {
        "points": None,
        "results": payload,
        "stdout": json.dumps(payload, sort_keys=True),
        "exit": EXIT_OK if agree else EXIT_NUMERIC,
    }


def _run_rcfp(args) -> dict:
    field = field_data(args.field)
    ctx = lattice_context(field, tol=args.tol)
    el = ok_element(field, args.modulus, *_pair(args.element))
    points = rcfp_plot(
        ctx,
        el,
        color_modulus=args.color_mod,
        budget=args.budget,
        weber_flag=args.weber,
        rescale=args.rescale,
    )
    return {
        "points": points,
        "index_arity": 2,
        "color_mod": args.color_mod,
        "results": {
            "field": args.field,
            "modulus": args.modulus,
            "element": list(_pair(args.element)),
            "quotient_order": quotient_order(el),
            "weber": args.weber,
            "rescale": args.rescale,
        },
    }


def _pair(text: str) -> tuple[int, int]:
    vals = _ints(text)
    if len(vals) != 2:
        raise ValueError(f"element literal needs 2 entries, got {len(vals)}")
    return vals[0], vals[1]


def _run_torsion(args) -> dict:
    field = field_data(args.field)
    ctx = lattice_context(field, tol=args.tol)
    points = torsion_coordinate_plot(
        ctx,
        args.modulus,
        coordinate=args.coordinate,
        color_modulus=args.color_mod,
        s_max=args.s_max,
        gamma=args.gamma,
        budget=args.budget,
    )
    return {
        "points": points,
        "index_arity": 2,
        "color_mod": args.color_mod,
        "results": {
            "field": args.field,
            "modulus": args.modulus,
            "coordinate": args.coordinate,
        },
    }


def _run_find_element(args) -> dict:
    mat = find_matrix(
        args.n,
        args.m,
        args.d,
        require_vanishing=args.require_vanishing,
        seed=args.seed,
        budget=args.budget,
    )
    payload = {
        "matrix": [list(row) for row in mat.entries],
        "n": args.n,
        "m": args.m,
        "order": mat_order(mat),
        "phi_d_vanishes": check_cyclotomic_vanishing(mat, args.d),
    }
    return {"points": None, "results": payload, "stdout": json.dumps(payload, sort_keys=True)}


_RUNNERS = {
    "gauss": _run_gauss,
    "superchar": _run_superchar,
    "gd": _run_gd,
    "weyl": _run_weyl,
    "rcfp": _run_rcfp,
    "torsion": _run_torsion,
    "find-element": _run_find_element,
}


def _emit(args, argv: list[str], result: dict, workers: int) -> list[str]:
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    outputs = []
    points = result.get("points")
    formats = args.formats
    if points is not None and "csv" in formats:
        write_points_csv(points, out / "points.csv", result["index_arity"])
        outputs.append("points.csv")
    if points is not None and "png" in formats:
        style = render_style(
            result.get("color_mod", 1),
            width=args.size,
            height=args.size,
            point_radius=args.point_radius,
        )
        save_png(render_scatter(points, style), out / "plot.png")
        outputs.append("plot.png")
        if result.get("batches"):
            write_frames(
                points,
                result["batches"],
                style=style,
                out_dir=out / "frames",
                extra_meta={"argv": argv},
            )
            outputs.append("frames/")
    options = {
        k: (str(v) if isinstance(v, Path) else sorted(v) if isinstance(v, frozenset) else v)
        for k, v in vars(args).items()
        if k != "cmd"
    }
    meta = {
        "argv": argv,
        "subcommand": args.cmd,
        "options": options,
        "outputs": outputs,
        "results": result.get("results", {}),
        "version": __version__,
        "workers": workers,
    }
    write_meta(out / "meta.json", meta)
    outputs.append("meta.json")
    return outputs


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    workers = _workers()
    try:
        result = _RUNNERS[args.cmd](args)
    except _BUDGET_ERRORS as exc:
        print(f"gperiods: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _USAGE_ERRORS as exc:
        print(f"gperiods: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"gperiods: numeric: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"gperiods: io: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        _emit(args, argv, result, workers)
    except OSError as exc:
        print(f"gperiods: io: {exc}", file=sys.stderr)
        return EXIT_IO
    if result.get("stdout"):
        print(result["stdout"])
    return result.get("exit", EXIT_OK)


if __name__ == "__main__":
    raise SystemExit(main())
