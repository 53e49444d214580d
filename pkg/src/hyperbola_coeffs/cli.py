"""Command-line interface.

Usage examples::

    hyperbola-coeffs series --fn phi --s 0.5 --order 4
    hyperbola-coeffs bound --functional fs --kind starlike --target f --s 0.5 --lambda 1
    hyperbola-coeffs verify --functional hankel22 --kind starlike --s-grid 0.25:1:0.25 --samples 5000 --seed 42
    hyperbola-coeffs domain --s 0.5 --boundary --count 3

Exit codes: 0 success, 1 numeric failure, 2 usage error, 3 bound violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .bounds import coeff_bound, fs_bound, hankel22_bound
from .classes import ClassParams, boundary_point, k_extremal, phi_extremal, point_in_domain, q_series
from .errors import BranchCut, NumericError, ParameterError
from .search import CampaignConfig, run_campaign

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    params: Dict[str, Any]
    rows: List[Dict[str, Any]]
    seed: Optional[int] = None
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "rows": self.rows,
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = list(self.rows[0].keys()) if self.rows else []
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in self.rows:
            w.writerow([_csv_cell(row[c]) for c in cols])
        return buf.getvalue()


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _complex_str(z: complex) -> str:
    return f"{z.real!r}{'+' if z.imag >= 0 or math.isnan(z.imag) else '-'}{abs(z.imag)!r}j"


def _argmax_str(arg: Dict[str, Any]) -> str:
    parts = []
    for k, v in arg.items():
        if isinstance(v, (list, tuple)):
            parts.append(f"{k}=[{','.join(_complex_str(complex(x)) for x in v)}]")
        else:
            parts.append(f"{k}={_complex_str(complex(v))}")
    return ";".join(parts)


def parse_grid(text: str) -> List[float]:
    """``a:b:step`` inclusive of ``b`` when ``(b - a)/step`` is integral within 1e-9."""
    try:
        a, b, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"grid {text!r} is not of the form a:b:step") from None
    if not (step > 0) or not all(math.isfinite(v) for v in (a, b, step)) or b < a:
        raise UsageError(f"grid {text!r} needs a <= b and a positive step")
    span = (b - a) / step
    count = int(math.floor(span + 1e-9)) + 1
    return [round(a + k * step, 12) for k in range(count)]


def parse_complex_pair(text: str) -> complex:
    try:
        re_, im_ = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"probe {text!r} is not of the form re,im") from None
    return complex(re_, im_)


def _f(v) -> Optional[float]:
    return None if v is None else float(v)


def cmd_series(args) -> OutputRecord:
    if args.fn == "q":
        jet = q_series(args.s, args.order)
        start = 0
    else:
        params = ClassParams(args.s, args.n_index, args.order)
        member = phi_extremal(params) if args.fn == "phi" else k_extremal(params)
        jet = member.f
        start = 1
    rows = [{"index": k, "re": float(jet.coeffs[k].real), "im": float(jet.coeffs[k].imag)}
            for k in range(start, jet.order + 1)]
    params = {"fn": args.fn, "s": args.s, "n_index": args.n_index, "order": args.order}
    return OutputRecord("series", params, rows)


def cmd_bound(args) -> OutputRecord:
    lam, n = args.lambda_, args.n
    if args.functional == "fs":
        if lam is None:
            raise UsageError("--lambda is required for --functional fs")
        res = fs_bound(args.kind, args.target, args.s, lam)
    elif args.functional == "coeff":
        if n is None:
            raise UsageError("--n is required for --functional coeff")
        res = coeff_bound(args.kind, args.s, n)
    else:
        res = hankel22_bound(args.kind, args.s)
    lo, hi = res.thresholds if res.thresholds else (None, None)
    row = {
        "s": float(args.s), "lambda": _f(lam), "n": n, "value": float(res.value),
        "regime": res.regime.value, "sharp": res.sharp,
        "threshold_lo": _f(lo), "threshold_hi": _f(hi), "extremal_hint": res.extremal_hint,
    }
    params = {"functional": args.functional, "kind": args.kind, "target": args.target,
              "s": args.s, "lambda": lam, "n": n}
    return OutputRecord("bound", params, [row])


def cmd_verify(args) -> OutputRecord:
    s_grid = parse_grid(args.s_grid)
    lam_grid = parse_grid(args.lambda_grid) if args.lambda_grid else None
    n_grid = [int(round(v)) for v in parse_grid(args.n_grid)] if args.functional == "coeff" else None
    if args.functional == "fs" and lam_grid is None:
        raise UsageError("--lambda-grid is required for --functional fs")
    cfg = CampaignConfig(
        functional=args.functional, kind=args.kind, target=args.target,
        s_grid=tuple(s_grid), lambda_grid=tuple(lam_grid) if lam_grid else None,
        n_grid=tuple(n_grid) if n_grid else None, samples=args.samples,
        refine_steps=args.refine_steps, seed=args.seed,
        tol_attain=args.tol_attain, tol_violate=args.tol_violate,
    )
    report = run_campaign(cfg, workers=args.workers)
    rows = []
    for r in report.records:
        rows.append({
            "s": r.s, "lambda": r.lam, "n": r.n, "bound": float(r.bound.value),
            "regime": r.bound.regime.value, "sharp": r.bound.sharp,
            "sup_found": float(r.sup_found), "candidate_sup": float(r.candidate_sup),
            "search_sup": float(r.search_sup), "gap": float(r.gap),
            "violated": bool(r.violated), "attained": bool(r.attained),
            "argmax_source": r.argmax_source, "argmax": _argmax_str(r.argmax),
        })
    params = {
        "functional": args.functional, "kind": args.kind, "target": args.target,
        "s_grid": args.s_grid, "lambda_grid": args.lambda_grid,
        "n_grid": args.n_grid if args.functional == "coeff" else None,
        "samples": args.samples, "refine_steps": args.refine_steps,
        "tol_attain": args.tol_attain, "tol_violate": args.tol_violate,
    }
    print(f"verify: {len(rows)} grid points in {report.wall_time:.2f} s", file=sys.stderr)
    return OutputRecord("verify", params, rows, seed=args.seed)


def cmd_domain(args) -> OutputRecord:
    params = {"s": args.s}
    if args.boundary:
        if args.count < 1:
            raise UsageError("--count must be >= 1")
        half = math.pi * args.s / 2
        rows = []
        for j in range(args.count):
            phi = -half + (j + 1) * (2 * half) / (args.count + 1)
            if abs(phi) < 1e-15:
                phi = 0.0
            pt = boundary_point(args.s, phi)
            rows.append({"phi": pt.phi, "rho": pt.rho, "re": pt.w.real, "im": pt.w.imag})
        params.update(mode="boundary", count=args.count)
        return OutputRecord("domain", params, rows)
    w = parse_complex_pair(args.probe)
    params.update(mode="probe", probe=args.probe)
    try:
        inside, note = point_in_domain(w, args.s), ""
    except BranchCut as exc:
        print(f"warning: {exc}", file=sys.stderr)
        inside, note = False, "branch cut"
    return OutputRecord("domain", params, [{"re": w.real, "im": w.imag, "inside": inside, "note": note}])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, default=None, help="write here instead of standard output")

    ap = argparse.ArgumentParser(prog="hyperbola-coeffs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="coefficients of q_s, Phi_{s,n} or K_{s,n}")
    p.add_argument("--fn", choices=("q", "phi", "k"), required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n-index", type=int, default=1)
    p.add_argument("--order", type=int, default=32)
    p.set_defaults(handler=cmd_series)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--functional", choices=("coeff", "fs", "hankel22"), required=True)
    p.add_argument("--kind", choices=("starlike", "convex"), required=True)
    p.add_argument("--target", choices=("f", "zf", "inv"), default="f")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--lambda", dest="lambda_", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("verify", parents=[common], help="search for the supremum and compare with the bound")
    p.add_argument("--functional", choices=("fs", "hankel22", "coeff"), required=True)
    p.add_argument("--kind", choices=("starlike", "convex"), required=True)
    p.add_argument("--target", choices=("f", "zf", "inv"), default="f")
    p.add_argument("--s-grid", required=True, metavar="A:B:STEP")
    p.add_argument("--lambda-grid", default=None, metavar="A:B:STEP")
    p.add_argument("--n-grid", default="2:10:1", metavar="A:B:STEP")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--refine-steps", type=int, default=40)
    p.add_argument("--tol-attain", type=float, default=1e-3)
    p.add_argument("--tol-violate", type=float, default=1e-9)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("domain", parents=[common], help="hyperbola boundary samples or membership probes")
    p.add_argument("--s", type=float, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--boundary", action="store_true")
    mode.add_argument("--probe", metavar="RE,IM")
    p.add_argument("--count", type=int, default=9)
    p.set_defaults(handler=cmd_domain)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        record = args.handler(args)
    except (UsageError, ParameterError) as exc:
        print(f"{ap.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, FloatingPointError, ValueError) as exc:
        print(f"{ap.prog} {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = record.to_json() if args.format == "json" else record.to_csv()
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8", newline="\n")
    if record.command == "verify" and any(r["violated"] for r in record.rows):
        print(f"{ap.prog} verify: bound violated", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK
