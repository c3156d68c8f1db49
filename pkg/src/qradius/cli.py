"""Command-line entry point: ``qradius <command> ...``.

Exit codes: 0 success, 1 a verified property failed, 2 usage or I/O error,
3 mathematically invalid request (q = 0 for bounds, 1x1 input with |q| < 1).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import List, Optional

import numpy as np

from .bounds import block_radius, theorem_bounds
from .errors import InvalidRequest, QRadiusError
from .linalg import as_matrix, dumps_matrix, loads_matrix
from .plot import boundary_svg
from .qcore import AscentConfig, QParameter, estimate_radius, trace_boundary
from .structured import FAMILIES, StructuredSpec, build_structured, make_spec
from .verify import SUITES, SuiteConfig, run_all, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

EXAMPLES = {
    "ex0": ("tridiagonal", 3, [[[2.0]], [[1.0]]]),
    "ex1": ("circulant", 2, [[[0.1]], [[1 / 24]]]),
    "ex2": ("circulant", 2, [[[1.0]], [[1.0]]]),
}


class UsageError(Exception):
    pass


# ---- parsing helpers ---------------------------------------------------------

def parse_q(text: str) -> QParameter:
    """'0.5' or 're,im'."""
    try:
        parts = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse q from {text!r}")
    if len(parts) == 1:
        q = complex(parts[0], 0.0)
    elif len(parts) == 2:
        q = complex(parts[0], parts[1])
    else:
        raise UsageError(f"cannot parse q from {text!r}")
    try:
        return QParameter(q)
    except QRadiusError as exc:
        raise UsageError(str(exc))


def parse_grid(text: str) -> List[float]:
    try:
        a, b, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"q grid must look like a:b:step, got {text!r}")
    if step <= 0 or b < a:
        raise UsageError("q grid needs step > 0 and a <= b")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    grid = [round(a + k * step, 12) for k in range(count)]
    if any(not (0.0 < q <= 1.0) for q in grid):
        raise UsageError("q grid must lie in (0, 1]")
    return grid


def read_text(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def read_matrix(path: str) -> np.ndarray:
    return loads_matrix(read_text(path))


def check_writable(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise UsageError(f"cannot write {path}: directory missing or read-only")
    if os.path.isdir(path):
        raise UsageError(f"cannot write {path}: is a directory")


def write_atomic(path: str, text: str) -> None:
    check_writable(path)
    parent = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(repr(float(v)) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def ascent_config(args) -> AscentConfig:
    return AscentConfig(restarts=args.restarts, max_iters=args.max_iters, tol=args.tol, seed=args.seed)


def q_meta(qp: QParameter) -> dict:
    return {"q_input": [qp.q.real, qp.q.imag], "q": qp.modulus}


def load_spec(args) -> StructuredSpec:
    if args.spec:
        if args.family or args.n or args.blocks:
            raise UsageError("--spec excludes --family, --n and block files")
        try:
            return StructuredSpec.from_obj(json.loads(read_text(args.spec)))
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad spec JSON: {exc}")
    if not args.family or not args.n:
        raise UsageError("give --spec or both --family and --n")
    return make_spec(args.family, args.n, [read_matrix(p) for p in args.blocks])


# ---- commands ------------------------------------------------------------------

def cmd_radius(args) -> int:
    a = read_matrix(args.matrix)
    qp = parse_q(args.q)
    est = estimate_radius(a, qp.reduced(), ascent_config(args))
    if args.json:
        obj = est.to_obj()
        obj.update(q_meta(qp))
        obj["cfg"] = ascent_config(args).to_obj()
        print(json.dumps(obj, indent=2))
    else:
        print(f"w_q: {est.value!r}")
        print(f"q: {qp.modulus!r}")
        print(f"constraint_residual: {est.constraint_residual()!r}")
        print(f"converged: {est.converged}")
        print(f"restarts: {est.restarts_used}")
        print(f"max_gap: {est.max_gap!r}")
    return EXIT_OK


def boundary_rows(trace):
    return [(t, h, z.real, z.imag) for t, h, z in zip(trace.thetas, trace.support_values, trace.points)]


def cmd_range(args) -> int:
    if args.thetas < 8:
        raise UsageError("--thetas must be at least 8")
    check_writable(args.out)
    if args.svg:
        check_writable(args.svg)
    a = read_matrix(args.matrix)
    qp = parse_q(args.q)
    trace = trace_boundary(a, qp.reduced(), args.thetas, ascent_config(args))
    write_atomic(args.out, csv_text(("theta", "support", "re", "im"), boundary_rows(trace)))
    if args.svg:
        write_atomic(args.svg, boundary_svg(trace.points, f"boundary of W_q, q = {qp.modulus:g}"))
    print(f"points: {len(trace.points)}")
    print(f"max_modulus: {trace.max_modulus()!r}")
    print(f"support_violation: {trace.support_violation()!r}")
    return EXIT_OK


def cmd_build(args) -> int:
    spec = load_spec(args)
    text = dumps_matrix(build_structured(spec)) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    spec = load_spec(args)
    qp = parse_q(args.q)
    if qp.modulus == 0.0:
        raise InvalidRequest("bounds need q != 0: the factor K(q) is unbounded")
    rep = theorem_bounds(spec, qp.reduced(), ascent_config(args))
    rep.q_input = qp.q
    if args.json:
        print(json.dumps(rep.to_obj(), indent=2))
    else:
        print(f"family: {rep.family}  n: {rep.n}  q: {rep.q!r}")
        print(f"k_factor: {rep.k_factor!r}")
        for k, r in zip(rep.block_labels, rep.block_radii):
            print(f"  block k={k}: {r!r}")
        print(f"lower: {rep.lower!r}")
        print(f"whole_estimate: {rep.whole_estimate!r}")
        print(f"upper: {rep.upper!r}")
        print(f"lower_ok: {rep.lower_ok}  upper_ok: {rep.upper_ok}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.report:
        check_writable(args.report)
    try:
        cfg = SuiteConfig(seed=args.seed, trials=args.trials)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.suite == "all":
        obj = run_all(cfg)
        summaries = [(s["suite"], s["passed"], s["failures"]) for s in obj["suites"]]
    else:
        rep = run_suite(args.suite, cfg)
        obj = rep.to_obj()
        summaries = [(rep.suite, rep.passed, rep.failures)]
    text = json.dumps(obj, indent=2) + "\n"
    if args.report:
        write_atomic(args.report, text)
    for name, ok, fails in summaries:
        print(f"{name}: {'pass' if ok else 'FAIL'} ({fails} failures)")
    return EXIT_OK if obj["passed"] else EXIT_FAIL


def example_rows(example: str, grid, cfg: AscentConfig):
    family, n, blocks = EXAMPLES[example]
    spec = make_spec(family, n, blocks)
    whole = build_structured(spec)
    rows = []
    for q in grid:
        rep = theorem_bounds(spec, q, cfg)
        # 2x2 cases use the closed form, larger ones the optimizer
        wq = block_radius(whole, q, cfg) if whole.shape[0] <= 2 else rep.whole_estimate
        rows.append((q, rep.lower, wq, rep.upper))
    return rows, whole


def cmd_reproduce(args) -> int:
    grid = parse_grid(args.q_grid)
    outs = [f"{args.out}_bounds.csv", f"{args.out}_boundary.csv", f"{args.out}_boundary.svg"]
    for p in outs:
        check_writable(p)
    cfg = ascent_config(args)
    rows, whole = example_rows(args.example, grid, cfg)
    trace = trace_boundary(whole, 0.5, args.thetas, cfg)
    write_atomic(outs[0], csv_text(("q", "lower", "wq", "upper"), rows))
    write_atomic(outs[1], csv_text(("theta", "support", "re", "im"), boundary_rows(trace)))
    write_atomic(outs[2], boundary_svg(trace.points, f"{args.example}: boundary of W_q, q = 0.5"))
    for p in outs:
        print(p)
    return EXIT_OK


# ---- argparse wiring ------------------------------------------------------------------

def _add_ascent(p, restarts=64):
    p.add_argument("--restarts", type=int, default=restarts, help="random starts for the ascent")
    p.add_argument("--tol", type=float, default=1e-10, help="relative stopping tolerance")
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)


def _add_spec(p):
    p.add_argument("blocks", nargs="*", help="block matrix JSON files")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="block count")
    p.add_argument("--spec", help="structured spec JSON instead of --family/--n/blocks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qradius", description="q-numerical radius and range tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="estimate w_q of a matrix")
    p.add_argument("matrix")
    p.add_argument("--q", required=True, help="q as a decimal or 're,im'")
    p.add_argument("--json", action="store_true")
    _add_ascent(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("range", help="trace the boundary of W_q")
    p.add_argument("matrix")
    p.add_argument("--q", required=True)
    p.add_argument("--thetas", type=int, default=360)
    p.add_argument("--out", required=True, help="CSV path")
    p.add_argument("--svg")
    _add_ascent(p, restarts=8)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("build", help="assemble a structured block matrix")
    _add_spec(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("bounds", help="lower/upper bounds for a structured matrix")
    _add_spec(p)
    p.add_argument("--q", required=True)
    p.add_argument("--json", action="store_true")
    _add_ascent(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="bounds table and boundary for a worked example")
    p.add_argument("--example", choices=sorted(EXAMPLES), required=True)
    p.add_argument("--q-grid", default="0.01:1:0.01")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--thetas", type=int, default=360)
    _add_ascent(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except InvalidRequest as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, QRadiusError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
