"""Command line front end.

Subcommands:
  check       run the verification suite on a catalog entry or .imm file
  construct   build the circle product of a Legendrian input
  crosscheck  compare jet derivatives against finite differences
  catalog     list the built-in examples

Exit status: 0 success, 1 a check or comparison failed, 2 usage error
(bad arguments, unknown spec, unparseable input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .ambient import AmbientQuadric
from .catalog import catalog_entry, catalog_names
from .checks import SampleConfig, run_suite
from .dsl import ImmersionSpec, parse, serialize
from .errors import LagkitError
from .findiff import jet_fd_deviation
from .products import circle_product
from .sampling import sample_points

_CROSSCHECK_STEP = {1: 1e-4, 2: 1e-4, 3: 1e-2}
_CROSSCHECK_TOL = {1: 1e-6, 2: 1e-6, 3: 1e-3}


class _UsageError(Exception):
    pass


def _load_spec(ref: str):
    """Catalog name or path to a DSL file -> (spec, declared quadric or None)."""
    if ref in catalog_names():
        entry = catalog_entry(ref)
        return entry.spec, entry.quadric
    if os.path.exists(ref):
        with open(ref, "r", encoding="utf-8") as fh:
            text = fh.read()
        try:
            spec = parse(text)
        except LagkitError as exc:
            raise _UsageError(f"cannot parse {ref}: {exc}") from exc
        name = os.path.splitext(os.path.basename(ref))[0]
        return spec.with_metadata(name=name), None
    raise _UsageError(
        f"{ref!r} is neither a catalog name nor an existing file; "
        f"catalog: {', '.join(catalog_names())}"
    )


def _parse_quadric(text: str, spec: ImmersionSpec) -> AmbientQuadric:
    """--quadric S:C with S the ambient index and C the curvature sign."""
    try:
        s_text, c_text = text.split(":", 1)
        s, c = int(s_text), float(c_text)
    except ValueError:
        raise _UsageError(f"--quadric expects S:C (e.g. 0:1 or 1:-1), got {text!r}")
    if s != spec.signature.s:
        raise _UsageError(
            f"--quadric index {s} does not match the spec signature index {spec.signature.s}"
        )
    if c == 0:
        raise _UsageError("--quadric curvature must be nonzero")
    kind = "pseudo_sphere" if c > 0 else "pseudo_hyperbolic"
    return AmbientQuadric(kind, c)


def _config(args) -> SampleConfig:
    return SampleConfig(
        num_points=args.samples,
        seed=args.seed,
        tol=args.tol,
        tol_third=args.tol_third,
    )


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _format_report(report) -> str:
    lines = [f"spec: {report.spec_name}"]
    if report.sphere_fit is not None:
        fit = report.sphere_fit
        lines.append(
            f"quadric fit: signed r^2 = {fit.radius_sq_signed:.9g}, "
            f"rms residual = {fit.rms_residual:.3e}"
        )
    width = max(len(name) for name in report.checks)
    for name, e in report.checks.items():
        if e.status == "skipped":
            lines.append(f"  {name:<{width}}  SKIP   ({e.reason})")
        elif e.status == "error":
            lines.append(f"  {name:<{width}}  ERROR  ({e.reason})")
        else:
            verdict = "pass" if e.passed else "FAIL"
            lines.append(
                f"  {name:<{width}}  {verdict}   max {e.max_residual:.3e}"
                f"  tol {e.tolerance:.1e}  ({e.points_evaluated} pts)"
            )
    lines.append("result: " + ("pass" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def _cmd_check(args) -> int:
    spec, declared = _load_spec(args.spec)
    quadric = declared
    if args.quadric is not None:
        quadric = _parse_quadric(args.quadric, spec)
    report = run_suite(spec, _config(args), quadric=quadric)
    if args.checks:
        wanted = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in wanted if c not in report.checks]
        if unknown:
            raise _UsageError(
                f"unknown check name(s) {', '.join(unknown)}; "
                f"this run produced: {', '.join(report.checks)}"
            )
        report.checks = {k: v for k, v in report.checks.items() if k in wanted}
    _emit(report.to_json() if args.json else _format_report(report), args.out)
    return 0 if report.passed else 1


def _cmd_construct(args) -> int:
    spec, declared = _load_spec(args.spec)
    try:
        product = circle_product(spec, t_name=args.t_name)
    except (LagkitError, ValueError) as exc:
        raise _UsageError(str(exc)) from exc
    _emit(serialize(product), args.out)
    if args.verify:
        report = run_suite(product, _config(args), quadric=None)
        sys.stdout.write(_format_report(report))
        return 0 if report.passed else 1
    return 0


def _cmd_crosscheck(args) -> int:
    spec, _ = _load_spec(args.spec)
    orders = [args.order] if args.order else [1, 2, 3]
    failed = False
    for order in orders:
        step = args.step if args.step is not None else _CROSSCHECK_STEP[order]
        tol = _CROSSCHECK_TOL[order]
        points = sample_points(
            spec,
            args.points,
            args.seed,
            extra_margin=2.0 * order * step * 1.01,
        )
        worst = 0.0
        for pt in points:
            dev = jet_fd_deviation(spec, pt, order, step)
            worst = max(worst, dev[order])
        ok = worst <= tol
        failed = failed or not ok
        print(
            f"order {order}: max |jet - fd| = {worst:.3e} "
            f"(step {step:.0e}, tol {tol:.0e}) {'pass' if ok else 'FAIL'}"
        )
    return 1 if failed else 0


def _cmd_catalog(args) -> int:
    rows = []
    for name in catalog_names():
        entry = catalog_entry(name)
        sig = entry.spec.signature
        quad = "-" if entry.quadric is None else f"c={entry.quadric.c:g}"
        rows.append(
            {
                "name": name,
                "params": entry.spec.num_params,
                "ambient": f"C^{sig.n}_{sig.s}",
                "quadric": quad,
                "summary": entry.summary,
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return 0
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        print(
            f"{r['name']:<{width}}  {r['params']} -> {r['ambient']:<6} "
            f"{r['quadric']:<6} {r['summary']}"
        )
    return 0


def _add_sampling_args(p):
    p.add_argument("--samples", type=int, default=20, help="sample points per check")
    p.add_argument("--seed", type=int, default=42, help="sampling seed")
    p.add_argument("--tol", type=float, default=1e-8, help="tolerance for second-order checks")
    p.add_argument(
        "--tol-third", type=float, default=1e-6, help="tolerance for third-order checks"
    )


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lagkit", description="Lagrangian immersion verification kernel"
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("spec", help="catalog name or path to a .imm file")
    _add_sampling_args(p)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--checks", help="comma-separated subset of checks to report")
    p.add_argument(
        "--quadric",
        help="declare the ambient quadric as S:C (index, curvature), e.g. 1:-1",
    )
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("construct", help="circle product of a Legendrian input")
    p.add_argument("spec", help="catalog name or path to a .imm file")
    p.add_argument("--t-name", default="t", help="name for the new angle parameter")
    p.add_argument("--out", help="write the constructed spec to this file")
    p.add_argument(
        "--verify", action="store_true", help="run the verification suite on the product"
    )
    _add_sampling_args(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("crosscheck", help="jet derivatives vs finite differences")
    p.add_argument("spec", help="catalog name or path to a .imm file")
    p.add_argument("--order", type=int, choices=(1, 2, 3), help="single order (default all)")
    p.add_argument("--step", type=float, help="finite difference step (default per order)")
    p.add_argument("--points", type=int, default=5, help="sample points")
    p.add_argument("--seed", type=int, default=42, help="sampling seed")
    p.set_defaults(fn=_cmd_crosscheck)

    p = sub.add_parser("catalog", help="list built-in examples")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(fn=_cmd_catalog)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; fold both through
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"lagkit: {exc}", file=sys.stderr)
        return 2
    except LagkitError as exc:
        print(f"lagkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
