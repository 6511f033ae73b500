"""Shared fixtures and conversions for the test suite."""
from __future__ import annotations

import functools
from importlib import resources

from ratinv.graph import GraphIdeal, target_order
from ratinv.groebner import to_param_field
from ratinv.parser import load_problem, parse_poly, parse_ratfunc
from ratinv.poly import PolyRing
from ratinv.ratfunc import FractionField, RatFunc, substitute
from ratinv.section import build_section

FIXTURE_DIR = resources.files("ratinv") / "fixtures"
FIXTURES = ("scaling", "translation", "rotation", "sl2", "euclidean", "scaling_circle", "trivial")
SMALL = ("scaling", "translation", "rotation")


@functools.lru_cache(maxsize=None)
def problem(name):
    return load_problem(FIXTURE_DIR / f"{name}.toml")


@functools.lru_cache(maxsize=None)
def graph(name) -> GraphIdeal:
    p = problem(name)
    gi = GraphIdeal(p.action, target_order(p.action, p.settings["order"], p.settings["ranking"]))
    gi.O_ext
    return gi


@functools.lru_cache(maxsize=None)
def section(name):
    p = problem(name)
    return build_section(graph(name), p.section, check_transversality=True)


def poly(text, *names):
    return parse_poly(text, PolyRing(names))


def rf(text, ring):
    """Parse a rational function over ``ring`` (division allowed)."""
    return parse_ratfunc(text, ring)


def ext_poly(text, ring, bindings=None):
    """Parse ``text`` as an element of ``QQ(z)[Z]`` (``ring``), optionally
    substituting named rational functions of ``z`` first."""
    field = ring.domain
    extra = tuple(sorted(bindings)) if bindings else ()
    src = PolyRing(ring.names + field.ring.names + extra)
    value = parse_ratfunc(text, src)
    flat = PolyRing(ring.names + field.ring.names)
    if bindings:
        images = {k: v.to_ring(flat) for k, v in bindings.items()}
        value = substitute(value, images, flat)
    else:
        value = value.to_ring(flat)
    if any(value.den.degree(n) for n in ring.names):
        raise ValueError("denominator involves main variables")
    num = to_param_field(value.num, ring)
    den = field.convert(RatFunc(value.den.to_ring(field.ring)))
    return num * den.inverse()


def sl2_bindings():
    """The four generators r1..r4 of the SL2 example."""
    z = graph("sl2").action.vring
    return {
        "r1": rf("z7*z1^2-2*z2*z6*z1+z2^2*z5", z),
        "r2": rf("z3*z2-z1*z4", z),
        "r3": rf("(z3^2*z7-2*z6*z4*z3+z5*z4^2)/(z1*z4-z3*z2)^2", z),
        "r4": rf("(z1*z6*z4-z1*z3*z7+z3*z2*z6-z2*z5*z4)/(z1*z4-z3*z2)", z),
    }


def basis_set(gb):
    return set(gb.polys)


def expected_basis(gb, texts, bindings=None):
    """The monic forms of ``texts`` in the ring and order of ``gb``."""
    if isinstance(gb.ring.domain, FractionField):
        polys = [ext_poly(t, gb.ring, bindings) for t in texts]
    else:
        polys = [parse_poly(t, gb.ring) for t in texts]
    return {p.monic(gb.order) for p in polys}
