"""The ``trop`` command line tool.

Exit status: 0 on success, 1 when an expression does not parse, 2 for
semantically invalid requests (wrong dimension, unsupported input).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import cornerint, hodecomp, kernels, skeletons
from .expr import Monomial, ParseError, RatFunc, TropPoly, evaluate, format_expr, parse
from .svg import plot_svg
from .tropnum import q_str

COMMANDS = ("eval", "skel", "corner", "member", "similar", "orthogonal", "ci-check",
            "ci-close", "essential", "regular", "hodecomp", "hdim", "chain", "thicken")
ARITY = {"member": 2, "similar": 2, "orthogonal": 2}


class UsageError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    exprs: list
    vars: list
    json_path: Optional[str] = None
    svg_path: Optional[str] = None
    viewport: tuple = (Fraction(-5), Fraction(5), Fraction(-5), Fraction(5))
    point: Optional[tuple] = None
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)

    def __post_init__(self):
        if not self.vars:
            raise UsageError("the variable list is empty")
        x0, x1, y0, y1 = self.viewport
        if not (x0 < x1 and y0 < y1):
            raise UsageError("viewport must satisfy xmin < xmax and ymin < ymax")


def _rationals(text: str, what: str) -> tuple:
    try:
        return tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad {what}: {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trop", description="Exact tropical rational function toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("-e", "--expr", action="append", required=True, help="expression (repeatable)")
        s.add_argument("--vars", required=True, help="comma separated variable names, e.g. x,y")
        s.add_argument("--json", dest="json_path", help="write JSON here instead of stdout")
        s.add_argument("--svg", dest="svg_path", help="write an SVG plot (two variables only)")
        s.add_argument("--viewport", default="-5,5,-5,5", help="xmin,xmax,ymin,ymax")
        s.add_argument("--point", help="evaluation point for eval, e.g. 1,2")
        s.add_argument("--alpha", default="1")
        s.add_argument("--beta", default="1")
    c = sub.add_parser("corpus", help="re-run golden jobs")
    c.add_argument("directory")
    c.add_argument("--update", action="store_true", help="rewrite goldens instead of comparing")
    return p


def _job(ns) -> JobSpec:
    names = [v.strip() for v in ns.vars.split(",") if v.strip()]
    vp = _rationals(ns.viewport, "viewport")
    if len(vp) != 4:
        raise UsageError("viewport needs four numbers")
    return JobSpec(ns.command, list(ns.expr), names, ns.json_path, ns.svg_path, vp,
                   _rationals(ns.point, "point") if ns.point else None,
                   _rationals(ns.alpha, "alpha")[0], _rationals(ns.beta, "beta")[0])


def _qs(v) -> list:
    return [q_str(c) for c in v]


def _mono(text: str, names) -> Monomial:
    e = parse(text, names)
    f = RatFunc.of(e)
    if isinstance(e, TropPoly) and e.is_monomial():
        return e.monomials[0]
    if len(f.num.terms) == 1 and len(f.den.terms) == 1:
        return f.num.monomials[0] / f.den.monomials[0]
    raise UsageError(f"{text!r} is not a monomial")


def execute(job: JobSpec) -> tuple:
    """Run a job; returns ``(json-able result, SkelSet to plot or None)``."""
    names = job.vars
    want = ARITY.get(job.command, 1)
    if job.command != "chain" and len(job.exprs) != want:
        raise UsageError(f"{job.command} takes {want} expression(s)")
    if job.command == "chain":
        gens = [_mono(t, names) for t in job.exprs]
        chain = hodecomp.hs_chain(gens)
        return {"condeg": hodecomp.condeg(gens),
                "chain": [[format_expr(m, names) for m in level] for level in chain]}, None
    exprs = [parse(t, names) for t in job.exprs]
    f = exprs[0]
    cmd = job.command
    if cmd == "eval":
        if job.point is None:
            raise UsageError("eval needs --point")
        r = evaluate(f, job.point)
        return {"value": q_str(r.value), "ghost": r.ghost}, None
    if cmd == "skel":
        S = skeletons.skeleton(f)
        return skeletons.to_json(S), S
    if cmd == "corner":
        if not isinstance(f, TropPoly):
            raise UsageError("corner needs a (supertropical) polynomial")
        S = skeletons.corner_locus(f)
        return skeletons.to_json(S), S
    if cmd == "member":
        m = kernels.member(exprs[0], exprs[1])
        if m.member:
            return {"member": True, "n": m.n, "bound": q_str(m.bound)}, None
        w = m.witness
        wj = {"kind": w.kind, "point": _qs(w.point)}
        if w.ray is not None:
            wj["ray"] = _qs(w.ray)
        return {"member": False, "witness": wj}, None
    if cmd == "similar":
        return {"similar": kernels.similar(exprs[0], exprs[1])}, None
    if cmd == "orthogonal":
        return {"orthogonal": kernels.orthogonal(exprs[0], exprs[1])}, None
    if cmd == "ci-check":
        return cornerint.is_corner_integral(RatFunc.of(f)).to_json(), None
    if cmd in ("ci-close", "essential", "thicken"):
        if cmd == "ci-close":
            g = cornerint.ci_closure(RatFunc.of(f))
        elif cmd == "essential":
            g = cornerint.essential_form(RatFunc.of(f))
        else:
            if job.alpha < 0 or job.beta < 0:
                raise UsageError("alpha and beta must be nonnegative")
            g = skeletons.thicken(f, job.alpha, job.beta)
        return {"result": format_expr(g, names)}, (skeletons.skeleton(g) if job.svg_path else None)
    if cmd == "regular":
        return {"regular": cornerint.is_regular(RatFunc.of(f))}, None
    if cmd == "hodecomp":
        comps = hodecomp.ho_decompose(f)
        return {"components": [c.to_json(names) for c in comps],
                "hdim": [c.condeg for c in comps if not c.bounded]}, None
    if cmd == "hdim":
        return hodecomp.hyperdim(f).to_json(names), None
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def run(argv: Sequence[str] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.command == "corpus":
        return run_corpus(Path(ns.directory), ns.update)
    try:
        job = _job(ns)
        if job.svg_path and len(job.vars) != 2:
            raise UsageError("--svg needs exactly two variables")
        result, skel = execute(job)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _dump(result)
    if job.json_path:
        Path(job.json_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if job.svg_path:
        if skel is None:
            skel = skeletons.skeleton(parse(job.exprs[0], job.vars))
        Path(job.svg_path).write_text(plot_svg(skel, job.viewport), encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# golden corpus


def _run_captured(args: list) -> tuple:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(args)
    return code, out.getvalue(), err.getvalue()


def corpus_results(directory: Path) -> dict:
    """Fresh outputs for every ``jobs/*.json`` file, keyed by golden file name.

    A job file holds ``{"args": [...]}``; the token ``@svg`` in the arguments
    is replaced by a temporary SVG path whose contents become a golden too.
    """
    import tempfile

    results = {}
    for job in sorted((directory / "jobs").glob("*.json")):
        entry = json.loads(job.read_text(encoding="utf-8"))
        with tempfile.TemporaryDirectory() as tmp:
            svg = Path(tmp) / "plot.svg"
            args = [str(svg) if a == "@svg" else a for a in entry["args"]]
            code, out, err = _run_captured(args)
            results[job.stem + ".out"] = f"exit: {code}\n{out}" + (f"stderr: {err}" if err else "")
            if "@svg" in entry["args"] and svg.exists():
                results[job.stem + ".svg"] = svg.read_text(encoding="utf-8")
    return results


def run_corpus(directory: Path, update: bool = False) -> int:
    golden = directory / "golden"
    results = corpus_results(directory)
    if update:
        golden.mkdir(parents=True, exist_ok=True)
        for name, text in results.items():
            (golden / name).write_text(text, encoding="utf-8")
        print(f"wrote {len(results)} golden files")
        return 0
    bad = [name for name, text in results.items()
           if not (golden / name).exists() or (golden / name).read_text(encoding="utf-8") != text]
    for name in bad:
        print(f"MISMATCH {name}")
    print(f"{len(results) - len(bad)}/{len(results)} golden files match")
    return 0 if not bad else 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
