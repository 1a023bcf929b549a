"""Command-line interface: ``riskscale <subcommand> [options]``.

Exit codes: 0 success, 1 reproduction cells failed, 2 invalid input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .approx import ApproxKind, fit_exponential_model, ruin_probability
from .config import load_config
from .errors import NumericalError, ValidationError
from .lambertw import lambert_w
from .policy import KCriticalUndefined, Method, PolicyParams, k_critical, optimize, value_function
from .repro import TARGETS, run_target, summarize
from .scale import build_scale_basis, de_finetti_barrier

__all__ = ["build_parser", "main", "run"]

EXIT_OK, EXIT_CELLS_FAILED, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if v is None:
        return ""
    return f"{float(v):.9g}"


def _samples(spec: str) -> np.ndarray:
    try:
        parts = [float(p) for p in spec.split(":")]
    except ValueError as exc:
        raise ValidationError(f"samples must be start:stop:step, got {spec!r}") from exc
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise ValidationError(f"samples must be start:stop:step with step > 0, got {spec!r}")
    start, stop, step = parts
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _float_list(spec: str) -> list[float]:
    try:
        return [float(v) for v in spec.split(",") if v.strip()]
    except ValueError as exc:
        raise ValidationError(f"expected comma-separated numbers, got {spec!r}") from exc


class _Output:
    """Collects tables and records, then writes CSV or JSON."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.blocks: list[tuple[str, list[str], list[list]]] = []
        self.record: dict = {}

    def table(self, name: str, header: list[str], rows: list[list]):
        self.blocks.append((name, header, rows))

    def render(self) -> str:
        if self.fmt == "json":
            doc = dict(self.record)
            for name, header, rows in self.blocks:
                doc[name] = [dict(zip(header, row)) for row in rows]
            return json.dumps(doc, indent=2, default=_json_default) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.record:
            writer.writerow(["field", "value"])
            for key, val in self.record.items():
                writer.writerow([key, _fmt(val) if not isinstance(val, (list, dict)) else json.dumps(val)])
            buf.write("\n")
        for i, (_, header, rows) in enumerate(self.blocks):
            if i:
                buf.write("\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _model(args):
    if not args.config:
        raise ValidationError("--config is required")
    return load_config(args.config).build()


def _cmd_scale(args, out: _Output):
    model = _model(args)
    if args.approx:
        model = fit_exponential_model(model, ApproxKind(args.approx))
    basis = build_scale_basis(model, args.q)
    out.record.update(phi=basis.phi, b_definetti=de_finetti_barrier(basis))
    out.table(
        "roots",
        ["root_re", "root_im", "coef_re", "coef_im"],
        [[g.real, g.imag, a.real, a.imag] for g, a in zip(basis.roots, basis.coefficients)],
    )
    x = _samples(args.samples)
    cols = [x, basis.W(x), basis.W(x, 1), basis.W(x, 2), basis.Z(x), basis.C(x)]
    out.table("samples", ["x", "W", "dW", "d2W", "Z", "C"], [list(r) for r in zip(*cols)])


def _cmd_ruin(args, out: _Output):
    model = _model(args)
    kind = None if args.kind == "exact" else ApproxKind(args.kind)
    x = _samples(args.samples)
    out.table("ruin", ["x", "psi"], [list(r) for r in zip(x, ruin_probability(model, x, kind))])


def _cmd_approx(args, out: _Output):
    model = _model(args)
    exact = build_scale_basis(model, args.q)
    phi0, b0 = exact.phi, de_finetti_barrier(exact)
    rows = [["exact", phi0, 0.0, b0, 0.0]]
    for kind in ApproxKind:
        basis = build_scale_basis(fit_exponential_model(model, kind), args.q)
        phi, b = basis.phi, de_finetti_barrier(basis)
        rel_b = abs(b - b0) / b0 * 100 if b0 else (0.0 if b == 0 else math.inf)
        rows.append([kind.value, phi, abs(phi - phi0) / phi0 * 100, b, rel_b])
    out.table("approx", ["kind", "phi", "phi_rel_err_pct", "b_definetti", "b_rel_err_pct"], rows)


def _cmd_policy(args, out: _Output):
    model = _model(args)
    params = PolicyParams(args.q, args.k, args.P)
    sol = optimize(model, params, args.method)
    out.record.update(
        method=sol.method.value,
        regime=sol.regime.value,
        a_star=sol.a_star,
        b_star=sol.b_star,
        J0=sol.J0,
    )
    out.table("candidates", ["a", "b", "J0"], [list(c) for c in sol.candidates])
    if args.value_samples:
        x = _samples(args.value_samples)
        v = value_function(sol, sol.ingredients, params, x)
        out.table("value", ["x", "V"], [list(r) for r in zip(x, v)])


def _cmd_kc(args, out: _Output):
    model = _model(args)
    if args.q_samples:
        rows = []
        for q in _samples(args.q_samples):
            try:
                rows.append([q, k_critical(model, q, args.P)])
            except KCriticalUndefined:
                rows.append([q, math.nan])
        out.table("kc", ["q", "k_c"], rows)
    else:
        rows = []
        for lam in _samples(args.lam_samples):
            m = dataclasses.replace(model, lam=float(lam))
            try:
                rows.append([lam, k_critical(m, args.q, args.P)])
            except KCriticalUndefined:
                rows.append([lam, math.nan])
        out.table("kc", ["lam", "k_c"], rows)


def _cmd_lambert(args, out: _Output):
    zs = _float_list(args.z)
    out.table("lambert", ["z", "w"], [[z, lambert_w(z, args.branch)] for z in zs])


def _cmd_repro(args, out: _Output) -> int:
    cells = run_target(args.target, tol=args.tol, eps=args.eps)
    rows = [
        [c.target, c.label, c.expected, c.computed, c.error, c.tol, "pass" if c.passed else "FAIL"]
        for c in cells
    ]
    out.table("cells", ["target", "cell", "expected", "computed", "abs_error", "tol", "status"], rows)
    summary = summarize(cells)
    out.record.update(summary)
    print(
        f"summary: passed={summary['passed']} failed={summary['failed']} skipped={summary['skipped']}",
        file=sys.stderr,
    )
    return EXIT_OK if summary["failed"] == 0 else EXIT_CELLS_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="model configuration (JSON)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    p = argparse.ArgumentParser(prog="riskscale", description="Scale functions and dividend policies.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scale", parents=[common], help="roots, coefficients and sampled W, Z, C")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--samples", default="0:10:0.1", help="start:stop:step")
    s.add_argument("--approx", choices=[k.value for k in ApproxKind])
    s.set_defaults(func=_cmd_scale)

    s = sub.add_parser("ruin", parents=[common], help="exponential ruin-probability formulas")
    s.add_argument("--kind", choices=["exact"] + [k.value for k in ApproxKind], default="de-vylder")
    s.add_argument("--samples", default="0:10:1")
    s.set_defaults(func=_cmd_ruin)

    s = sub.add_parser("approx", parents=[common], help="compare exponential surrogates")
    s.add_argument("--q", type=float, required=True)
    s.set_defaults(func=_cmd_approx)

    s = sub.add_parser("policy", parents=[common], help="optimal (-a, 0, b) policy")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--P", type=float, default=0.0)
    s.add_argument("--method", choices=["auto"] + [m.value for m in Method], default="auto")
    s.add_argument("--value-samples", help="start:stop:step grid for the value function")
    s.set_defaults(func=_cmd_policy)

    s = sub.add_parser("kc", parents=[common], help="critical injection cost curves")
    s.add_argument("--P", type=float, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--q-samples", help="start:stop:step over q")
    g.add_argument("--lam-samples", help="start:stop:step over lam (needs --q)")
    s.add_argument("--q", type=float, default=0.1)
    s.set_defaults(func=_cmd_kc)

    s = sub.add_parser("lambert", parents=[common], help="evaluate Lambert-W")
    s.add_argument("--z", required=True, help="comma-separated arguments")
    s.add_argument("--branch", type=int, choices=(0, -1), default=0)
    s.set_defaults(func=_cmd_lambert)

    s = sub.add_parser("repro", parents=[common], help="recompute reference tables")
    s.add_argument("target", choices=sorted(TARGETS) + ["all"])
    s.add_argument("--tol", type=float, help="override every cell tolerance")
    s.add_argument("--eps", type=float, help="restrict an eps-family target to one value")
    s.set_defaults(func=_cmd_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    out = _Output(args.format)
    try:
        code = args.func(args, out) or EXIT_OK
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    text = out.render()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


run = main

if __name__ == "__main__":
    sys.exit(main())
