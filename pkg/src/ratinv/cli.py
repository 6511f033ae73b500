"""Command-line front end: dispatch, reports and emitters."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .action import validate_action
from .errors import (InternalConsistencyError, NotACrossSection, ParseError, RatinvError,
                     UsageError)
from .graph import GraphIdeal, generating_invariants, orbit_ideal_at, rewrite_with_graph, target_order
from .invariantization import (ZETA, invariantize, moving_frame_ideal, replacement_description,
                               zeta_ring)
from .parser import ProblemFile, load_problem, parse_ratfunc, parse_rational
from .poly import MPoly, PolyRing
from .ratfunc import RatFunc
from .render import render_basis, render_value
from .section import build_section, random_linear_section, rewrite_via_section, section_invariants

COMMANDS = ("graph", "invariants", "rewrite", "section-validate", "section-invariants",
            "replacement", "invariantize", "moving-frame", "orbit")


@dataclass
class Report:
    command: str
    order: str
    invariants: List[str] = field(default_factory=list)
    names: List[str] = field(default_factory=list)
    basis: List[str] = field(default_factory=list)
    degree: Optional[int] = None
    result: Optional[str] = None
    details: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_json(self) -> str:
        data = {
            "command": self.command,
            "order": self.order,
            "invariants": self.invariants,
            "basis": self.basis,
            "degree": self.degree,
            "result": self.result,
            "warnings": self.warnings,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(data, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"order: {self.order}"]
        if self.invariants:
            lines.append("invariants:")
            labels = self.names or [""] * len(self.invariants)
            lines += [f"  {n} = {r}" if n else f"  {r}" for n, r in zip(labels, self.invariants)]
        if self.basis:
            lines.append("basis:")
            lines += [f"  {b}" for b in self.basis]
        if self.degree is not None:
            lines.append(f"degree: {self.degree}")
        if self.result is not None:
            lines.append(f"result: {self.result}")
        lines += self.details
        if self.warnings:
            lines.append("warnings:")
            lines += [f"  {w}" for w in self.warnings]
        else:
            lines.append("warnings: none")
        lines.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument helpers

def parse_point(text: str, arity: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != arity or not all(parts):
        raise UsageError(f"--point needs {arity} comma-separated rationals")
    try:
        return [parse_rational(p) for p in parts]
    except ParseError as exc:
        raise UsageError(f"--point: {exc.bare_message}") from None


def parse_zeta_poly(text: str, action, field_) -> MPoly:
    """A monic polynomial in ``zeta`` with coefficients in ``QQ(z)``."""
    ring = PolyRing(action.vars + (ZETA,))
    r = parse_ratfunc(text, ring)
    zi = ring.index[ZETA]
    if r.den.degree(ZETA):
        raise UsageError("--poly: denominators must not involve zeta")
    zr = zeta_ring(field_)
    den = r.den.to_ring(action.vring)
    parts = {}
    for m, c in r.num.terms.items():
        rest = m[:zi] + m[zi + 1:]
        parts.setdefault(m[zi], {})[rest] = c
    terms = {}
    for k, t in parts.items():
        terms[(k,)] = RatFunc(MPoly(action.vring, t), den)
    beta = MPoly(zr, terms)
    if not beta.terms or max(terms)[0] == 0:
        raise UsageError("--poly must have positive degree in zeta")
    lead = terms[max(terms)]
    if lead != 1:
        raise UsageError("--poly must be monic in zeta")
    return beta


# ---------------------------------------------------------------------------
# dispatch

def _section(problem: ProblemFile, gi: GraphIdeal, args, report: Report):
    if getattr(args, "random_section", False):
        cs = random_linear_section(gi, seed=args.seed, retries=args.retries)
        report.details.append("section: " + ", ".join(str(p) for p in cs.P.gens))
        return cs.section_ideal
    if problem.section is None:
        raise UsageError(f"{args.command} needs a [cross_section] in the problem file")
    return build_section(gi, problem.section, check_transversality=args.command == "section-validate")


def run_command(args, problem: ProblemFile) -> Report:
    a = problem.action
    settings = problem.settings
    kind = args.order or settings["order"]
    order = target_order(a, kind, settings["ranking"])
    report = Report(args.command, repr(order))
    report.warnings += validate_action(a, seed=args.seed).warnings
    gi = GraphIdeal(a, order)
    cmd = args.command

    if cmd == "graph":
        report.basis = render_basis(gi.O.polys, gi.O.order)
        report.details.append(f"orbit_dim: {gi.orbit_dim}")
    elif cmd == "invariants":
        inv = generating_invariants(gi)
        report.invariants, report.names = inv.render(), list(inv.names)
        report.basis = gi.O_ext.render()
    elif cmd == "rewrite":
        if not args.target:
            raise UsageError("rewrite needs --target")
        target = parse_ratfunc(args.target, a.vring)
        if args.via_section:
            si = _section(problem, gi, args, report)
            inv = section_invariants(si)
            res = rewrite_via_section(target, si, inv)
        else:
            inv = generating_invariants(gi)
            res = rewrite_with_graph(target, gi, inv)
        report.invariants, report.names = inv.render(), list(inv.names)
        report.result = str(res.formula)
    elif cmd in ("section-validate", "section-invariants", "replacement", "invariantize"):
        si = _section(problem, gi, args, report)
        report.basis = si.I_ext.render()
        report.degree = si.degree
        if cmd == "section-validate":
            rep = si.section.report
            report.details += [f"zero_dimensional: {str(rep.zero_dimensional).lower()}",
                               f"radical: {str(rep.radical).lower()}",
                               f"codimension: {rep.codimension}"]
            if rep.transversal_rank is not None:
                report.details.append(f"transversal_rank: {rep.transversal_rank}")
        elif cmd == "section-invariants":
            inv = section_invariants(si)
            report.invariants, report.names = inv.render(), list(inv.names)
        elif cmd == "replacement":
            desc = replacement_description(si)
            if desc.explicit is not None:
                report.result = "(" + ",".join(render_value(v) for v in desc.explicit) + ")"
            else:
                report.result = "; ".join(f"{n}: {desc.minimal_polynomials[n]}"
                                          for n in si.I_ext.ring.names)
            report.details.append(f"triangular: {str(desc.triangular).lower()}")
        else:
            if not args.poly:
                raise UsageError("invariantize needs --poly")
            beta = parse_zeta_poly(args.poly, a, si.I_ext.ring.domain)
            report.result = str(invariantize(beta, si))
    elif cmd == "moving-frame":
        if problem.section is None:
            raise UsageError("moving-frame needs a [cross_section] in the problem file")
        mf = moving_frame_ideal(a, problem.section)
        report.basis = mf.M_ext.render()
        report.result = f"locally_free={str(mf.locally_free).lower()}"
    elif cmd == "orbit":
        if not args.point:
            raise UsageError("orbit needs --point")
        point = parse_point(args.point, len(a.vars))
        res = orbit_ideal_at(gi, point)
        report.basis = res.render()
        report.warnings += res.warnings
    else:
        raise UsageError(f"unknown command {cmd!r}")
    return report


# ---------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ratinv", description="Rational invariants of rational group actions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="problem file")
    p.add_argument("--order", choices=("lex", "grevlex"), default=None,
                   help="term order on the Z variables (default from the file, else grevlex)")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--retries", type=int, default=None)
    p.add_argument("--target", help="rational invariant to rewrite")
    p.add_argument("--point", help="comma-separated rational point")
    p.add_argument("--poly", help="monic polynomial in zeta")
    p.add_argument("--via-section", action="store_true",
                   help="rewrite with the section invariants instead of the graph invariants")
    p.add_argument("--random-section", action="store_true",
                   help="draw a random affine-linear section instead of the file's")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        problem = load_problem(args.file)
        if args.seed is None:
            args.seed = problem.settings["seed"]
        if args.retries is None:
            args.retries = problem.settings["retries"]
        if args.seed < 0 or args.retries < 0:
            raise UsageError("--seed and --retries must be nonnegative")
        report = run_command(args, problem)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NotACrossSection as exc:
        print(f"error: {exc}", file=sys.stderr)
        for d in exc.report.diagnostics:
            print(f"  {d}", file=sys.stderr)
        return exc.exit_code
    except RatinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for f in getattr(exc, "failures", []) or []:
            print(f"  {f}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # anything else is an engine bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return InternalConsistencyError.exit_code
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    print(report.to_json() if args.output == "json" else report.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
