"""Command line interface.

Commands: examples, analyze, construct, verify, plot.  Exit codes are a
contract: 0 success, 1 I/O error, 2 validation failure, 3 verification
threshold failure.  The environment variable QUASIFOLD_PRECISION
overrides the default 1e-12 certified evaluation precision.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import corpus
from .construction import build_construction, construction_report, induced_moment
from .errors import DimensionUnsupported, QuasifoldError, SchemaError
from .polytope import check_delzant, check_rational, check_simple, parse_polytope
from .verify import run_verification, sample_level_set

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3


def _input_options(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", type=Path, help="polytope document (JSON file)")
    group.add_argument("--builtin", help="builtin polytope name (see 'examples')")


def _sampling_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--samples", type=int, default=10_000, help="level-set sample count")
    sub.add_argument("--seed", type=int, default=0, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasifold",
        description="Symplectic quasifolds from simple convex polytopes",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    examples = commands.add_parser("examples", help="list builtin polytopes")
    examples.set_defaults(func=cmd_examples)

    analyze = commands.add_parser("analyze", help="vertices, simplicity, rationality")
    _input_options(analyze)
    analyze.add_argument("--out", type=Path, help="write the JSON report here")
    analyze.set_defaults(func=cmd_analyze)

    construct = commands.add_parser("construct", help="full construction report")
    _input_options(construct)
    construct.add_argument("--out", type=Path, help="write the JSON report here")
    construct.set_defaults(func=cmd_construct)

    verify = commands.add_parser("verify", help="Monte Carlo verification run")
    _input_options(verify)
    _sampling_options(verify)
    verify.add_argument("--out", type=Path, help="write the JSON report here")
    verify.add_argument("--csv", type=Path, help="dump (mu, Phi) sample pairs")
    verify.add_argument("--tol-roundtrip", type=float, default=1e-8,
                        help="round-trip / containment tolerance")
    verify.add_argument("--tol-rank", type=float, default=1e-6,
                        help="relative rank-margin threshold")
    verify.set_defaults(func=cmd_verify)

    plot = commands.add_parser("plot", help="SVG of the polytope and moment image")
    _input_options(plot)
    _sampling_options(plot)
    plot.add_argument("--svg", type=Path, help="SVG output path (n = 2 only)")
    plot.add_argument("--csv", type=Path, help="dump (mu, Phi) sample pairs")
    plot.set_defaults(func=cmd_plot)
    return parser


# --------------------------------------------------------------------------
# Helpers
# --------------------------------------------------------------------------

def _load_document(args) -> dict:
    if args.builtin is not None:
        try:
            return corpus.builtin_document(args.builtin)
        except KeyError as exc:
            raise SchemaError(str(exc.args[0])) from None
    text = args.input.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{args.input}: not valid JSON: {exc}") from None


def _emit_json(payload: dict, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _write_csv(path: Path, mus: np.ndarray, phis: np.ndarray) -> None:
    n = mus.shape[1] if mus.size else phis.shape[1]
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"mu_{i + 1}" for i in range(n)]
                        + [f"phi_{i + 1}" for i in range(n)])
        for mu, phi in zip(mus, phis):
            writer.writerow([repr(float(v)) for v in mu] + [repr(float(v)) for v in phi])


def _polygon_order(points: np.ndarray) -> np.ndarray:
    center = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - center[1], points[:, 0] - center[0])
    return points[np.argsort(angles)]


def _write_svg(path: Path, outline: np.ndarray, scatter: np.ndarray) -> None:
    size, margin = 640.0, 40.0
    stacked = outline if scatter.size == 0 else np.vstack([outline, scatter])
    lo = stacked.min(axis=0)
    hi = stacked.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    scale = (size - 2 * margin) / span

    def place(pt) -> tuple[float, float]:
        return (margin + (pt[0] - lo[0]) * scale,
                size - margin - (pt[1] - lo[1]) * scale)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>',
    ]
    outline_pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in (place(p) for p in outline))
    lines.append(
        f'<polygon points="{outline_pts}" fill="none" stroke="#1f5fa8" stroke-width="2"/>'
    )
    for p in scatter:
        x, y = place(p)
        lines.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="1.6" fill="#c23b22" fill-opacity="0.45"/>')
    lines.append("</svg>")
    path.write_text("\n".join(lines) + "\n")


def _vertex_floats(p, precision: float) -> np.ndarray:
    return np.array([[s.to_float(precision) for s in v.point] for v in p.vertices])


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_examples(args, precision: float) -> int:
    for name in corpus.builtin_names():
        sys.stdout.write(f"{name:16s} {corpus.DESCRIPTIONS.get(name, '')}\n")
    return EXIT_OK


def cmd_analyze(args, precision: float) -> int:
    poly = parse_polytope(_load_document(args))
    simplicity = check_simple(poly)
    certificate = check_rational(poly)
    payload = {
        "dimension": poly.dim,
        "facets": poly.facet_count,
        "field": {
            "degree": poly.field.degree,
            "minpoly": [str(c) for c in poly.field.minpoly],
            "root_interval": [str(b) for b in poly.field.root_interval],
        },
        "vertices": [
            {
                "exact": [s.to_expr() for s in v.point],
                "float": [s.to_float(precision) for s in v.point],
                "active_facets": list(v.active),
            }
            for v in poly.vertices
        ],
        "simple": {
            "simple": simplicity.simple,
            "witness_index": simplicity.witness_index,
        },
        "rational": {
            "rational": certificate.rational,
            "rank": certificate.rank,
            "lattice_basis": (
                [[s.to_expr() for s in b] for b in certificate.basis]
                if certificate.rational else None
            ),
            "integer_coordinates": (
                [list(row) for row in certificate.coords]
                if certificate.rational else None
            ),
            "independent_witness": (
                list(certificate.independent)
                if certificate.independent is not None else None
            ),
        },
        "delzant": None,
    }
    if certificate.rational:
        report = check_delzant(poly, certificate)
        payload["delzant"] = {
            "integral": report.integral,
            "facet_gcds": list(report.facet_gcds),
            "vertex_determinants": list(report.vertex_determinants),
            "nonprimitive_facets": list(report.nonprimitive_facets),
            "nonunimodular_vertices": list(report.nonunimodular_vertices),
        }
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_construct(args, precision: float) -> int:
    poly = parse_polytope(_load_document(args))
    data = build_construction(poly)
    _emit_json(construction_report(data, precision), args.out)
    return EXIT_OK


def cmd_verify(args, precision: float) -> int:
    if args.samples < 0:
        raise SchemaError("--samples must be nonnegative")
    poly = parse_polytope(_load_document(args))
    data = build_construction(poly)
    report = run_verification(
        data, samples=args.samples, seed=args.seed,
        tol_roundtrip=args.tol_roundtrip, tol_rank=args.tol_rank,
        precision=precision,
    )
    _emit_json(report.as_dict(), args.out)
    if args.csv is not None:
        sample_set = sample_level_set(data, args.samples, seed=args.seed,
                                      precision=precision)
        phis = (induced_moment(sample_set.z, data, tol=None, precision=precision)
                if len(sample_set) else np.zeros((0, data.dim)))
        _write_csv(args.csv, sample_set.mu, phis)
    if not report.passed:
        sys.stderr.write(
            "verification failed: " + ", ".join(report.failures) + "\n"
        )
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_plot(args, precision: float) -> int:
    if args.svg is None and args.csv is None:
        raise SchemaError("plot needs --svg and/or --csv")
    if args.samples < 0:
        raise SchemaError("--samples must be nonnegative")
    poly = parse_polytope(_load_document(args))
    data = build_construction(poly)
    if args.svg is not None and data.dim != 2:
        raise DimensionUnsupported(f"SVG plots need n = 2, polytope has n = {data.dim}")
    sample_set = sample_level_set(data, args.samples, seed=args.seed, precision=precision)
    phis = (induced_moment(sample_set.z, data, tol=None, precision=precision)
            if len(sample_set) else np.zeros((0, data.dim)))
    if args.csv is not None:
        _write_csv(args.csv, sample_set.mu, phis)
    if args.svg is not None:
        outline = _polygon_order(_vertex_floats(poly, precision))
        _write_svg(args.svg, outline, phis)
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    raw = os.environ.get("QUASIFOLD_PRECISION", "")
    try:
        precision = float(raw) if raw else 1e-12
        if not (precision > 0 and math.isfinite(precision)):
            raise ValueError
    except ValueError:
        sys.stderr.write(f"invalid QUASIFOLD_PRECISION: {raw!r}\n")
        return EXIT_VALIDATION
    try:
        return args.func(args, precision)
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except QuasifoldError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
