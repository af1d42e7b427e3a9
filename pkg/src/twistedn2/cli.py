"""Command line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
errors (bad flags, unparsable expressions, windows that are too small).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, rank2, twisted
from .automorphisms import (
    AutoSpec,
    AutoTable,
    ClassificationError,
    ConstraintViolation,
    GeneralizedAutoSpec,
    auto_from_spec,
    classify,
    generalized_auto,
    homomorphism_residuals,
)
from .bialgebra import Tensor, coboundary_delta, cocycle_residual, cybe, skew_check
from .derivations import solve_derivation_space
from .parser import evaluate, parse, render

INSTANCES = {"twisted": twisted, "rank2": rank2}
MAX_LISTED = 20


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    instance: str
    status: int = 0
    results: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)

    def fail(self):
        self.status = 1

    def to_json(self):
        d = {"command": self.command, "instance": self.instance,
             "status": "pass" if self.status == 0 else "fail", "results": self.results}
        return json.dumps(d, indent=2, ensure_ascii=False)

    def to_text(self):
        return "\n".join(self.lines + ["PASS" if self.status == 0 else "FAIL"])


def _value(src, algebra, auto=None):
    return evaluate(parse(src), algebra, auto)


def _element(src, algebra, what):
    v = _value(src, algebra)
    if not isinstance(v, Element):
        if v == 0:
            return Element()
        raise UsageError(f"{what} must be an algebra element, got {render(v)}")
    return v


def _tensor2(src, algebra):
    v = _value(src, algebra)
    if isinstance(v, Tensor) and v.arity == 2:
        return v
    if not isinstance(v, (Element, Tensor)) and v == 0:
        return Tensor(2)
    raise UsageError(f"expected an element of g⊗g, got {render(v)}")


def _kv(text, flag):
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"{flag}: expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _scalar(src, algebra):
    v = _value(src, algebra)
    if isinstance(v, (Element, Tensor)):
        raise UsageError(f"expected a scalar, got {render(v)}")
    return v


def parse_auto_spec(text, algebra):
    kv = _kv(text, "--auto")
    unknown = set(kv) - {"k", "beta"}
    if unknown or "k" not in kv:
        raise UsageError("--auto takes k=<0..3>,beta=<scalar>")
    try:
        k = int(kv["k"])
    except ValueError:
        raise UsageError(f"--auto: k must be an integer, got {kv['k']!r}") from None
    beta = _scalar(kv.get("beta", "1"), algebra)
    if not beta:
        raise UsageError("--auto: beta must be nonzero")
    return AutoSpec(k, beta)


def parse_gauto_spec(text, algebra):
    kv = _kv(text, "--gauto")
    names = [f"a{j + 1}" for j in range(algebra.rank)]
    allowed = {"eps", "es", "root", *names}
    if set(kv) - allowed or "eps" not in kv:
        raise UsageError(f"--gauto takes eps=±1,{','.join(n + '=...' for n in names)},es=...,root=...")
    try:
        eps = int(kv["eps"])
    except ValueError:
        raise UsageError(f"--gauto: eps must be 1 or -1, got {kv['eps']!r}") from None
    a = tuple(_scalar(kv.get(n, str(eps)), algebra) for n in names)
    return GeneralizedAutoSpec(eps, a, _scalar(kv.get("es", "1"), algebra),
                               _scalar(kv.get("root", "1"), algebra))


def _default_window(algebra):
    return 4 if algebra.rank == 1 else 2


def build_table(args, algebra):
    """The automorphism selected by --auto / --gauto / --table, or None."""
    window = args.window if getattr(args, "window", None) is not None else _default_window(algebra)
    if getattr(args, "auto", None):
        if algebra.rank != 1:
            raise UsageError("--auto is only defined on the twisted instance; use --gauto")
        return auto_from_spec(parse_auto_spec(args.auto, algebra), algebra, window)
    if getattr(args, "gauto", None):
        return generalized_auto(parse_gauto_spec(args.gauto, algebra), algebra, window)
    if getattr(args, "table", None):
        with open(args.table, encoding="utf-8") as fh:
            return AutoTable.from_text(algebra, fh.read(), label=args.table)
    return None


def _residual_lines(residuals):
    return [f"{r.x}, {r.y}: {r.value}" for r in residuals[:MAX_LISTED]]


# -- commands ------------------------------------------------------------------


def cmd_eval(args, algebra, rep):
    table = build_table(args, algebra)
    v = evaluate(parse(args.expr), algebra, table)
    rep.results = {"expr": args.expr, "value": render(v)}
    rep.lines.append(render(v))


def cmd_jacobi(args, algebra, rep):
    bad, n_pairs, n_triples = algebra.identity_sweep(args.window, ordered=args.ordered)
    rep.results = {
        "window": str(args.window),
        "pairs": n_pairs,
        "triples": n_triples,
        "violations": [f"{kind} {', '.join(map(str, ops))}: {r}" for kind, ops, r in bad[:MAX_LISTED]],
        "violation_count": len(bad),
    }
    rep.lines.append(f"window={args.window} pairs={n_pairs} triples={n_triples} violations={len(bad)}")
    rep.lines += rep.results["violations"]
    if bad:
        rep.fail()


def cmd_solve_der(args, algebra, rep):
    report = solve_derivation_space(algebra, args.parity, _scalar(args.degree, algebra), args.window, args.inner)
    rep.results = report.to_dict()
    rep.lines.append(report.to_text())
    if not report.all_matched:
        rep.fail()


def cmd_check_auto(args, algebra, rep):
    try:
        table = build_table(args, algebra)
    except ConstraintViolation as e:
        rep.results = {"error": str(e), "identity": e.identity, "witness": str(e.witness)}
        rep.lines.append(str(e))
        rep.fail()
        return
    if table is None:
        raise UsageError("check-auto needs one of --auto, --gauto, --table")
    res = homomorphism_residuals(table)
    bad = [r for r in res if r.value]
    rep.results = {"label": table.label, "basis": len(table.images), "pairs": len(res),
                   "nonzero": len(bad), "residuals": _residual_lines(bad)}
    rep.lines.append(f"{table.label}: {len(table.images)} basis vectors, {len(res)} pairs, "
                     f"{len(bad)} nonzero residuals")
    rep.lines += rep.results["residuals"]
    if args.show_table:
        rep.results["table"] = table.to_text().splitlines()
        rep.lines.append(table.to_text())
    if bad:
        rep.fail()


def cmd_classify(args, algebra, rep):
    table = build_table(args, algebra)
    bad = [r for r in homomorphism_residuals(table) if r.value]
    if bad:
        rep.results = {"error": "not a homomorphism on its window", "residuals": _residual_lines(bad)}
        rep.lines.append(f"not a homomorphism on its window: {len(bad)} nonzero residuals")
        rep.lines += rep.results["residuals"]
        rep.fail()
        return
    try:
        spec = classify(table)
    except ClassificationError as e:
        rep.results = {"error": str(e)}
        rep.lines.append(str(e))
        rep.fail()
        return
    rep.results = {"k": spec.k, "beta": str(spec.beta)}
    rep.lines.append(f"varpi^{spec.k} ∘ inner({spec.beta})  (k={spec.k}, beta={spec.beta})")


def cmd_cybe(args, algebra, rep):
    r = _tensor2(args.tensor, algebra)
    c = cybe(algebra, r)
    rep.results = {"r": render(r), "skew": skew_check(r), "cybe": render(c)}
    rep.lines += [f"r = {render(r)}", f"skew = {skew_check(r)}", f"c(r) = {render(c)}"]
    if c:
        rep.fail()


def cmd_delta_r(args, algebra, rep):
    r = _tensor2(args.tensor, algebra)
    x = _element(args.x, algebra, "--x")
    d = coboundary_delta(algebra, r, x)
    rep.results = {"r": render(r), "x": render(x), "delta": render(d)}
    rep.lines.append(f"Δ_r({render(x)}) = {render(d)}")
    if args.y is not None:
        y = _element(args.y, algebra, "--y")
        res = cocycle_residual(algebra, r, x, y)
        rep.results["y"] = render(y)
        rep.results["cocycle_residual"] = render(res)
        rep.lines.append(f"cocycle residual at ({render(x)}, {render(y)}) = {render(res)}")
        if res:
            rep.fail()


def _window_arg(text):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", choices=sorted(INSTANCES), default="twisted")
    common.add_argument("--format", choices=("text", "json"), default="text")

    autos = argparse.ArgumentParser(add_help=False)
    g = autos.add_mutually_exclusive_group()
    g.add_argument("--auto", help="k=<0..3>,beta=<scalar>  (twisted instance)")
    g.add_argument("--gauto", help="eps=±1,a1=...,a2=...,es=...,root=...")
    g.add_argument("--table", help="file with lines 'L(1) -> -1*L(-1)'")
    autos.add_argument("--window", type=_window_arg, default=None,
                       help="window for --auto/--gauto tables (default 4 twisted, 2 rank2)")

    p = argparse.ArgumentParser(prog="twistedn2", description="Exact computations in the twisted N=2 superconformal algebra.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common, autos], help="evaluate an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("jacobi", parents=[common], help="antisymmetry and super-Jacobi sweep")
    s.add_argument("--window", type=_window_arg, required=True)
    s.add_argument("--ordered", action="store_true", help="sweep ordered triples")
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("solve-der", parents=[common], help="solve for homogeneous derivations")
    s.add_argument("--parity", choices=("even", "odd"), required=True)
    s.add_argument("--degree", required=True, help="e.g. 0, 1/2, -3/2, or 1+th on rank2")
    s.add_argument("--window", type=_window_arg, required=True)
    s.add_argument("--inner", type=_window_arg, required=True)
    s.set_defaults(func=cmd_solve_der)

    s = sub.add_parser("check-auto", parents=[common, autos], help="verify an automorphism on a window")
    s.add_argument("--show-table", action="store_true")
    s.set_defaults(func=cmd_check_auto)

    s = sub.add_parser("classify", parents=[common], help="classify an automorphism table")
    s.add_argument("--table", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("cybe", parents=[common], help="classical Yang-Baxter expression c(r)")
    s.add_argument("tensor")
    s.set_defaults(func=cmd_cybe)

    s = sub.add_parser("delta-r", parents=[common], help="coboundary Δ_r(x), optionally the cocycle residual")
    s.add_argument("tensor")
    s.add_argument("--x", required=True)
    s.add_argument("--y", default=None)
    s.set_defaults(func=cmd_delta_r)
    return p


def run(argv):
    """Run one command; returns (RunReport, args).  Raises on usage errors."""
    args = build_parser().parse_args(argv)
    algebra = INSTANCES[args.instance]()
    rep = RunReport(args.command, algebra.name)
    args.func(args, algebra, rep)
    return rep, args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        rep, args = run(argv)
    except SystemExit as e:  # argparse
        return e.code if isinstance(e.code, int) else 2
    except (ValueError, OSError) as e:
        # ParseError, UsageError, WindowError, ParityError and sector errors
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
