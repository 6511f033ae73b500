"""Cross-sections: validation, degree, transversality and random sections."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from gmpy2 import mpq

from .action import GroupAction, infinitesimal_matrix
from .errors import (BudgetExhausted, ContextError, InternalConsistencyError, NotACrossSection,
                     NotExpressible)
from .graph import (GraphIdeal, InvariantSet, RewriteResult, extract_invariants, graph_generators,
                    rewrite_invariant, verify_invariant)
from .groebner import (GroebnerBasis, Ideal, buchberger_reduced, fraction_field_basis, ideal_dimension,
                       is_radical_zero_dim, is_zero_dimensional, normal_form, param_ring,
                       standard_monomials, to_param_field)
from .orders import GREVLEX, TermOrder
from .poly import MPoly, PolyRing
from .ratfunc import RatFunc


@dataclass
class SectionReport:
    zero_dimensional: bool = False
    radical: bool = False
    degree: int = 0
    transversal_rank: Optional[int] = None
    codimension: Optional[int] = None
    diagnostics: List[str] = field(default_factory=list)


@dataclass
class CrossSection:
    P: Ideal
    report: SectionReport
    section_ideal: Optional["SectionIdeal"] = None


@dataclass
class SectionIdeal:
    I_ext: GroebnerBasis
    section: CrossSection
    graph: GraphIdeal

    @property
    def degree(self) -> int:
        return self.section.report.degree


def section_ring(gi: GraphIdeal) -> PolyRing:
    return PolyRing(gi.action.targets)


def _pinned(P: Ideal):
    """``{Z_j: c}`` when every generator has the form ``Z_j - c``."""
    pins = {}
    for p in P.gens:
        if len(p.terms) > 2 or p.total_degree() != 1:
            return None
        lin = [(m, c) for m, c in p.terms.items() if any(m)]
        if len(lin) != 1:
            return None
        m, c = lin[0]
        name = P.ring.names[m.index(1)]
        if name in pins:
            return None
        pins[name] = -p.constant_coeff() / c
    return pins


def section_basis_direct(gi: GraphIdeal, P: Ideal) -> GroebnerBasis:
    """``(G + P + (Z - g)) ∩ QQ(z)[Z]`` by elimination over ``QQ(z)``,
    pinning coordinate sections before the Groebner run."""
    a = gi.action
    elim = gi.elim_names
    base = PolyRing(elim + a.targets + a.vars)
    gens = graph_generators(a, base)
    pins = _pinned(P) if P.gens else None
    zorder = gi.order
    ranked = zorder.ranked_names(PolyRing(a.targets))
    target = param_ring(a.targets, a.vars)
    if pins:
        free = tuple(n for n in a.targets if n not in pins)
        small = PolyRing(elim + free + a.vars)
        images = {n: small.const(v) for n, v in pins.items()}
        gens = [g.compose(small, images) for g in gens]
        mains = elim + free
        order = TermOrder("block", blocks=[(elim, "grevlex"),
                                           (tuple(n for n in ranked if n in free), zorder.kind)])
        gb = fraction_field_basis(gens, a.vars, mains, order)
        kept = [p for p in gb if not p.support() & set(elim)]
        polys = [p.to_ring(target) for p in kept]
        polys += [target.gen(n) - v for n, v in pins.items()]
        return buchberger_reduced(Ideal(polys, target), gi.order)
    gens += [p.to_ring(base) for p in P.gens]
    mains = elim + a.targets
    order = TermOrder("block", blocks=[(elim, "grevlex"), (ranked, zorder.kind)])
    gb = fraction_field_basis(gens, a.vars, mains, order)
    kept = [p.to_ring(target) for p in gb if not p.support() & set(elim)]
    return GroebnerBasis(kept, gi.order, target)


def section_basis_extension(gi: GraphIdeal, P: Ideal) -> GroebnerBasis:
    """Reduced basis of ``O^e + P`` over ``QQ(z)``."""
    target = gi.O_ext.ring
    polys = list(gi.O_ext.polys) + [to_param_field(p, target) for p in P.gens]
    return buchberger_reduced(Ideal(polys, target), gi.order)


def build_section(gi: GraphIdeal, P: Ideal, route: str = "extension",
                  check_transversality: bool = False) -> SectionIdeal:
    """Validate ``P`` as a cross-section and return ``I^e`` with its report.

    Raises :class:`NotACrossSection` (carrying the report) when the
    codimension is wrong or ``I^e`` is not zero-dimensional and radical.
    """
    ring = section_ring(gi)
    if P.ring is not ring:
        raise ContextError(f"section ideal must live in {ring}")
    report = SectionReport()
    s = gi.orbit_dim
    if P.gens:
        pgb = buchberger_reduced(P, GREVLEX)
        report.codimension = ring.nvars - ideal_dimension(pgb)
    else:
        report.codimension = 0
    cs = CrossSection(P, report)
    if report.codimension != s:
        report.diagnostics.append(f"codimension {report.codimension} differs from orbit dimension {s}")
        raise NotACrossSection(f"not a cross-section: {report.diagnostics[-1]}", report)
    if check_transversality:
        report.transversal_rank = transversality_test(gi.action, P)
    if route == "extension":
        I_ext = section_basis_extension(gi, P)
    elif route == "direct":
        I_ext = section_basis_direct(gi, P)
    else:
        raise ValueError(f"unknown route {route!r}")
    report.zero_dimensional = is_zero_dimensional(I_ext)
    if not report.zero_dimensional:
        why = "I^e is the unit ideal" if I_ext.is_unit else "I^e is not zero-dimensional"
        report.diagnostics.append(why)
        raise NotACrossSection(f"not a cross-section: {why}", report)
    report.degree = len(standard_monomials(I_ext))
    report.radical = is_radical_zero_dim(I_ext)
    if not report.radical:
        report.diagnostics.append("I^e is not radical")
        raise NotACrossSection("not a cross-section: I^e is not radical", report)
    si = SectionIdeal(I_ext, cs, gi)
    cs.section_ideal = si
    return si


# ---------------------------------------------------------------------------
# transversality

def _reduced_rank(rows: List[List[MPoly]], gb: Optional[GroebnerBasis]) -> int:
    """Rank over the fraction field of ``K[z]/P`` by fraction-free elimination."""
    def nf(p):
        return normal_form(p, gb) if gb is not None and gb.polys else p

    A = [[nf(x) for x in row] for row in rows]
    if not A:
        return 0
    ncol = len(A[0])
    rank = 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        for r in range(rank + 1, len(A)):
            if A[r][c]:
                f = A[r][c]
                A[r] = [nf(pr[c] * x - f * y) for x, y in zip(A[r], pr)]
        rank += 1
    return rank


def transversality_test(a: GroupAction, P: Ideal) -> int:
    """Rank of ``J_h * V`` on the section, ``h`` the generators of ``P``."""
    V = infinitesimal_matrix(a)
    vring = a.vring
    rename = dict(zip(a.targets, a.vars))
    hs = [p.to_ring(vring, rename) for p in P.gens]
    if not hs:
        return 0
    gb = buchberger_reduced(Ideal(hs, vring), GREVLEX)
    rows = []
    for h in hs:
        row = []
        for j in range(V.kappa):
            acc = RatFunc(vring.zero)
            for z, vij in zip(a.vars, V.column(j)):
                d = h.diff(z)
                if d and vij:
                    acc = acc + vij * d
            row.append(acc)
        den = vring.one
        for x in row:
            den = den * x.den
        rows.append([(x * den).num for x in row])
    return _reduced_rank(rows, gb)


# ---------------------------------------------------------------------------
# random sections

def random_linear_section(gi: GraphIdeal, seed: int = 0, retries: int = 10,
                          bound: int = 5) -> CrossSection:
    """Draw affine-linear sections ``a_i - sum m_ij Z_j`` with integer
    coefficients in ``[-bound, bound]`` until one validates.

    ``retries`` counts attempts after the first.
    """
    rng = random.Random(seed)
    ring = section_ring(gi)
    s = gi.orbit_dim
    Z = ring.gens()
    failures = []
    for _ in range(retries + 1):
        forms = []
        for _ in range(s):
            form = ring.const(rng.randint(-bound, bound))
            for zj in Z:
                form = form - rng.randint(-bound, bound) * zj
            forms.append(form)
        P = Ideal(forms, ring)
        label = ", ".join(str(f) for f in forms)
        if len(P.gens) < s:
            failures.append(f"({label}): zero form")
            continue
        rank = transversality_test(gi.action, P)
        if rank < s:
            failures.append(f"({label}): transversality rank {rank} < {s}")
            continue
        try:
            si = build_section(gi, P)
        except NotACrossSection as exc:
            failures.append(f"({label}): {exc}")
            continue
        si.section.report.transversal_rank = rank
        return si.section
    raise BudgetExhausted(f"no valid linear section in {retries + 1} attempts", failures)


# ---------------------------------------------------------------------------
# invariants through the section

def section_invariants(si: SectionIdeal, verify: bool = True) -> InvariantSet:
    gi = si.graph
    inv = extract_invariants(si.I_ext, gi.action.params)
    if verify:
        for r in inv:
            if not verify_invariant(r, gi.action, gi):
                raise InternalConsistencyError(f"section coefficient {r} is not invariant")
    return inv


def rewrite_via_section(target: RatFunc, si: SectionIdeal,
                        inv: InvariantSet | None = None) -> RewriteResult:
    a = si.graph.action
    if not verify_invariant(target, a, si.graph):
        raise NotExpressible(f"{target} is not an invariant of the action")
    inv = inv or section_invariants(si)
    return rewrite_invariant(target, inv, si.I_ext, dict(zip(a.vars, a.targets)))
