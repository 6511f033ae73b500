"""Replacement invariants, invariantization and the moving-frame ideal."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .action import GroupAction
from .errors import ContextError, ExcludedLocusError, InternalConsistencyError
from .graph import GraphIdeal, graph_generators, verify_invariant
from .groebner import (AUX, GroebnerBasis, Ideal, buchberger_reduced, fraction_field_basis,
                       is_zero_dimensional, minimal_polynomial, normal_form, param_ring,
                       to_param_field, univariate_gcd)
from .orders import GREVLEX, TermOrder
from .poly import MPoly, PolyRing
from .ratfunc import FractionField, RatFunc, poly_divmod, poly_gcd, poly_divexact
from .section import SectionIdeal

ZETA = "zeta"


@dataclass
class ReplacementDescription:
    """The zeros of ``I^e``: explicit when the degree is one, otherwise
    encoded by the basis and the per-variable minimal polynomials."""

    basis: GroebnerBasis
    degree: int
    minimal_polynomials: Dict[str, MPoly]
    triangular: bool
    explicit: Optional[Tuple[RatFunc, ...]] = None


def replacement_description(si: SectionIdeal) -> ReplacementDescription:
    gb = si.I_ext
    names = gb.ring.names
    minpolys = {n: minimal_polynomial(gb, n, ZETA) for n in names}
    heads = []
    for lm in gb.leads:
        nz = [i for i, e in enumerate(lm) if e]
        heads.append(nz[0] if len(nz) == 1 else None)
    triangular = None not in heads and sorted(heads) == list(range(len(names)))
    explicit = None
    if si.degree == 1:
        values = {}
        for p, lm in zip(gb.polys, gb.leads):
            var = names[lm.index(1)]
            values[var] = -p.constant_coeff() if p.ring.zero_mono in p.terms else gb.ring.domain.zero
        explicit = tuple(values[n] for n in names)
    return ReplacementDescription(gb, si.degree, minpolys, triangular, explicit)


# ---------------------------------------------------------------------------
# univariate helpers over QQ(z)

def zeta_ring(field: FractionField) -> PolyRing:
    return PolyRing((ZETA,), field)


def squarefree_part(f: MPoly) -> MPoly:
    """``f / gcd(f, f')``, monic; ``f`` univariate over a field."""
    if f.ring.nvars != 1:
        raise ContextError("squarefree part expects a univariate polynomial")
    lex = TermOrder("lex")
    d = f.diff(f.ring.names[0])
    if not d:
        return f.monic(lex)
    g = univariate_gcd(f, d)
    if g.is_constant():
        return f.monic(lex)
    q, r = poly_divmod(f, g, lex)
    if r:
        raise InternalConsistencyError("gcd does not divide the polynomial")
    return q.monic(lex)


def monic_univariate(expr: MPoly) -> MPoly:
    lex = TermOrder("lex")
    return expr.monic(lex)


# ---------------------------------------------------------------------------
# invariantization

def _section_polys_in_z(si: SectionIdeal) -> GroebnerBasis:
    a = si.graph.action
    rename = dict(zip(a.targets, a.vars))
    P = si.section.P
    polys = [p.to_ring(a.vring, rename) for p in P.gens]
    if not polys:
        return GroebnerBasis([], GREVLEX, a.vring)
    return buchberger_reduced(Ideal(polys, a.vring), GREVLEX)


def _clear(beta: MPoly) -> Dict[int, MPoly]:
    """Coefficients (by power of zeta) of ``beta`` times the lcm of its
    denominators, as polynomials in ``z``."""
    den = None
    for c in beta.terms.values():
        if den is None:
            den = c.den
        elif not c.den.is_constant():
            den = den * poly_divexact(c.den, poly_gcd(den, c.den))
    out = {}
    for m, c in beta.terms.items():
        v = c * RatFunc(den)
        if not v.is_polynomial():
            raise InternalConsistencyError("denominator clearing failed")
        out[m[0]] = v.num / v.den.constant_coeff()
    return out


def check_localization(beta: MPoly, si: SectionIdeal) -> None:
    """Refuse coefficients whose denominator vanishes on the section."""
    pz = _section_polys_in_z(si)
    for c in beta.terms.values():
        if pz.polys and not normal_form(c.den, pz):
            raise ExcludedLocusError(f"coefficient {c} has a denominator vanishing on the section")


def invariantize(beta: MPoly, si: SectionIdeal, verify: bool = True) -> MPoly:
    """The invariantization of a monic polynomial in ``zeta`` over ``QQ(z)``:
    squarefree part of the monic eliminant of ``I^e + alpha(Z, zeta)``."""
    a = si.graph.action
    field = si.I_ext.ring.domain
    if beta.ring.domain is not field or beta.ring.names != (ZETA,):
        raise ContextError(f"expected a polynomial in {ZETA} over {field.name}")
    check_localization(beta, si)
    alpha = _clear(beta)
    mains = a.targets + (ZETA,)
    ring = param_ring(mains, a.vars)
    rename = dict(zip(a.vars, a.targets))
    big = PolyRing(a.vars + mains)
    poly = big.zero
    for k, c in alpha.items():
        term = c.to_ring(big, rename)
        poly = poly + term * big.gen(ZETA) ** k
    alpha_Z = to_param_field(poly, ring)
    gens = [p.to_ring(ring) for p in si.I_ext.polys] + [alpha_Z]
    zorder = si.I_ext.order
    order = TermOrder("block", blocks=[(zorder.ranked_names(si.I_ext.ring), zorder.kind),
                                       ((ZETA,), "grevlex")])
    gb = buchberger_reduced(Ideal(gens, ring), order)
    only = [p for p in gb if p.support() <= {ZETA}]
    if len(only) != 1:
        raise InternalConsistencyError("elimination did not produce a single zeta polynomial")
    zr = zeta_ring(field)
    result = squarefree_part(only[0].to_ring(zr))
    if verify:
        gi = si.graph
        for c in result.terms.values():
            if not c.is_constant() and not verify_invariant(c, a, gi):
                raise InternalConsistencyError(f"invariantization coefficient {c} is not invariant")
    return result


def invariantize_rational(r: RatFunc, si: SectionIdeal, verify: bool = True) -> MPoly:
    field = si.I_ext.ring.domain
    zr = zeta_ring(field)
    beta = zr.gen(ZETA) - zr.const(field.convert(r))
    return invariantize(beta, si, verify)


def divides_on_section(ib: MPoly, beta: MPoly, si: SectionIdeal) -> bool:
    """Whether ``beta`` divides ``ib`` over the fraction field of ``K[z]/P``:
    every remainder coefficient has a numerator vanishing modulo ``P``."""
    lex = TermOrder("lex")
    _, r = poly_divmod(ib, beta, lex)
    pz = _section_polys_in_z(si)
    for c in r.terms.values():
        if not pz.polys or normal_form(c.num, pz):
            return False
    return True


# ---------------------------------------------------------------------------
# moving frame

@dataclass
class MovingFrameIdeal:
    M_ext: GroebnerBasis
    locally_free: bool


def moving_frame_ideal(a: GroupAction, P: Ideal) -> MovingFrameIdeal:
    """``(G + P(Z) + (Z - g)) : h^oo`` intersected with ``QQ(z)[lam]``."""
    gi = GraphIdeal(a)
    elim = a.targets + ((AUX,) if not a.denominator.is_constant() else ())
    base = PolyRing(gi.elim_names + a.targets + a.vars)
    gens = graph_generators(a, base) + [p.to_ring(base) for p in P.gens]
    mains = elim + a.params
    order = TermOrder("block", blocks=[(elim, "grevlex"), (a.params, "grevlex")])
    gb = fraction_field_basis(gens, a.vars, mains, order)
    target = param_ring(a.params, a.vars)
    kept = [p.to_ring(target) for p in gb if not p.support() & set(elim)]
    M = GroebnerBasis(kept, TermOrder("grevlex", a.params), target)
    return MovingFrameIdeal(M, is_zero_dimensional(M))
