"""Command-line front end.

    nhbrackets simulate SCENARIO [SCENARIO ...] [--jobs N] [--output PATH] [--format csv|json]
    nhbrackets verify [--dims 2 4 8] [--n 100] [--seed 0] [--tol 1e-12] [--hermitian-only]
    nhbrackets compare-pictures SCENARIO --t TIME
    nhbrackets spectrum EXPR

Exit status: 0 on success, 1 when a verification fails, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .dsl import operator_from_text
from .dynamics import compare_pictures
from .errors import NHError
from .scenario import (load_scenario, run_scenario, timeseries_to_csv,
                       emit_timeseries)
from .verify import verify_suite


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def cmd_simulate(args) -> int:
    if len(args.scenarios) > 1 and args.output:
        raise SystemExit("--output only makes sense with a single scenario")
    scenarios = [load_scenario(p) for p in args.scenarios]

    def run_one(sc):
        ts = run_scenario(sc)
        if args.output:
            path = Path(args.output)
            fmt = args.format or ("json" if path.suffix == ".json" else "csv")
        else:
            path, fmt = sc.output_path, args.format or sc.output_format
        if path is None:
            return timeseries_to_csv(ts) if len(scenarios) == 1 else None, sc, None
        emit_timeseries(ts, fmt, path)
        return None, sc, path

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(run_one, scenarios))
    for text, sc, path in results:
        if text is not None:
            sys.stdout.write(text)
        elif path is not None:
            print(f"{sc.name}: wrote {path}", file=sys.stderr)
        else:
            print(f"{sc.name}: no output path configured, skipped writing", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    report = verify_suite(args.dims, args.n, args.seed, args.tol, args.hermitian_only)
    text = report.to_json()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for r in report.results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: max relative residual "
              f"{r.max_relative:.3e} over {r.checks} checks", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_compare(args) -> int:
    sc = load_scenario(args.scenario)
    rho0 = sc.initial_rho()
    if rho0 is None or sc.observable is None:
        raise SystemExit("compare-pictures needs an observable and an initial state or density")
    cmp = compare_pictures(sc.hamiltonian, rho0, sc.observable, sc.hbar, args.t)
    out = {"t": args.t,
           "heis": {"re": cmp.heis.real, "im": cmp.heis.imag},
           "schro": {"re": cmp.schro.real, "im": cmp.schro.imag},
           "gap": cmp.gap}
    print(json.dumps(out, indent=2))
    return 0


def spectrum(expr: str) -> np.ndarray:
    """Eigenvalues of an operator expression, sorted by real then imaginary part."""
    ev = np.linalg.eigvals(operator_from_text(expr))
    return ev[np.lexsort((ev.imag, ev.real))]


def cmd_spectrum(args) -> int:
    for z in spectrum(args.expr):
        print(f"{_fmt(z.real)} {_fmt(z.imag)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nhbrackets",
                                 description="Non-Hermitian dynamics through generalized brackets")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run scenario files")
    p.add_argument("scenarios", nargs="+")
    p.add_argument("--output", help="override the output path (single scenario)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--jobs", type=int, default=1, help="scenarios to run concurrently")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="randomized identity checks")
    p.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8])
    p.add_argument("--n", type=int, default=100, help="samples per dimension")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--hermitian-only", action="store_true")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare-pictures", help="Heisenberg vs Schrodinger expectation")
    p.add_argument("scenario")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("spectrum", help="eigenvalues of an operator expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_spectrum)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NHError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
