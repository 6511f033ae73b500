"""Group and action data, axiom checks and infinitesimal generators."""
from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq, mpz

from .errors import ActionError, ContextError
from .groebner import GroebnerBasis, Ideal, buchberger_reduced, ideal_dimension, normal_form, saturate_by
from .orders import GREVLEX
from .poly import MPoly, PolyRing
from .ratfunc import RatFunc, squarefree_poly, substitute


def capitalized(name: str) -> str:
    """Name of the target coordinate paired with the source coordinate ``name``."""
    return name[0].upper() + name[1:]


@dataclass
class GroupSpec:
    """An affine algebraic group given by parameters, relations and neutral
    element, with an optional product ``mu*lam`` (written in ``product_left``
    and ``params``) and inverse."""

    params: Tuple[str, ...]
    relations: List[MPoly]
    neutral: Tuple
    product: Optional[List[MPoly]] = None
    product_left: Optional[Tuple[str, ...]] = None
    inverse: Optional[List[MPoly]] = None

    def __post_init__(self):
        self.params = tuple(self.params)
        self.neutral = tuple(mpq(v) for v in self.neutral)
        if len(self.neutral) != len(self.params):
            raise ContextError("neutral element arity differs from the number of parameters")
        self.ring = PolyRing(self.params)
        for r in self.relations:
            if r.ring is not self.ring:
                raise ContextError("group relations must be polynomials in the parameters")
        at_e = self.neutral_point()
        for r in self.relations:
            if r.evaluate(at_e):
                raise ActionError(f"neutral element does not satisfy the relation {r}")
        if self.product is not None:
            if self.product_left is None or len(self.product_left) != len(self.params):
                raise ContextError("product map needs one left-factor name per parameter")
            if len(self.product) != len(self.params):
                raise ContextError("product map arity differs from the number of parameters")
        if self.inverse is not None and len(self.inverse) != len(self.params):
            raise ContextError("inverse map arity differs from the number of parameters")

    def neutral_point(self) -> Dict[str, object]:
        return dict(zip(self.params, self.neutral))

    def basis(self) -> GroebnerBasis:
        return buchberger_reduced(Ideal(self.relations, self.ring), GREVLEX)


def group_dimension(g: GroupSpec) -> int:
    """Krull dimension of the group ideal."""
    if not g.relations:
        return len(g.params)
    return ideal_dimension(g.basis())


@dataclass
class GroupAction:
    """A rational action ``z -> g'(lam, z)/h(lam, z)``."""

    group: GroupSpec
    vars: Tuple[str, ...]
    numerators: List[MPoly]
    denominator: MPoly

    def __post_init__(self):
        self.vars = tuple(self.vars)
        self.ring = PolyRing(self.group.params + self.vars)
        if len(self.numerators) != len(self.vars):
            raise ContextError("one numerator per action variable is required")
        for p in list(self.numerators) + [self.denominator]:
            if p.ring is not self.ring:
                raise ContextError("action data must live in the ring of parameters and variables")
        if not self.denominator:
            raise ActionError("the action denominator is zero")
        self.targets = tuple(capitalized(v) for v in self.vars)
        clash = set(self.targets) & (set(self.vars) | set(self.group.params))
        if len(set(self.targets)) != len(self.targets) or clash:
            raise ContextError(f"capitalized target names collide: {sorted(clash) or self.targets}")
        self.vring = PolyRing(self.vars)
        self.fractions = [RatFunc(n, self.denominator) for n in self.numerators]

    @property
    def params(self):
        return self.group.params

    def h_squarefree(self) -> MPoly:
        return squarefree_poly(self.denominator)

    def apply(self, point: Mapping[str, object]) -> List[RatFunc]:
        """``g(lam_bar, z)`` as rational functions in the action variables."""
        out = []
        for f in self.fractions:
            r = f.partial_evaluate(point)
            out.append(r.to_ring(self.vring))
        return out


# ---------------------------------------------------------------------------
# random group points

def _rational_roots(p: MPoly) -> List:
    """Rational roots of a univariate polynomial with rational coefficients."""
    if p.is_constant():
        return []
    var = p.ring.names[0]
    coeffs = {m[0]: c for m, c in p.terms.items()}
    low = min(coeffs)
    roots = [mpq(0)] if low else []
    coeffs = {e - low: c for e, c in coeffs.items()}
    deg = max(coeffs)
    if deg == 0:
        return roots
    if deg == 1:
        return roots + [-coeffs.get(0, 0) / coeffs[1]]
    den = mpz(1)
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: mpz(c * den) for e, c in coeffs.items()}
    a0, an = abs(ints[0]), abs(ints[deg])
    if a0 > 10 ** 8 or an > 10 ** 8:
        return roots
    def divisors(n):
        return [d for d in range(1, int(n) + 1) if n % d == 0]
    found = set()
    for num in divisors(a0):
        for dd in divisors(an):
            for s in (1, -1):
                r = mpq(s * num, dd)
                if r in found:
                    continue
                v = sum(c * r ** e for e, c in ints.items())
                if not v:
                    found.add(r)
    return roots + sorted(found)


def _blocks(group: GroupSpec) -> List[Tuple[List[str], List[MPoly]]]:
    """Parameters grouped into classes connected by shared relations."""
    parent = {p: p for p in group.params}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in group.relations:
        names = sorted(r.support(), key=group.params.index)
        for a in names[1:]:
            parent[find(a)] = find(names[0])
    classes: Dict[str, List[str]] = {}
    for p in group.params:
        classes.setdefault(find(p), []).append(p)
    out = []
    for members in classes.values():
        rels = [r for r in group.relations if r.support() & set(members)]
        out.append((members, rels))
    return out


def random_group_point(group: GroupSpec, rng: random.Random, tries: int = 50,
                       bound: int = 5) -> Dict[str, object]:
    """A random rational point of the group variety.

    Unconstrained parameters get random integers; a block of relations in
    one parameter is solved by its rational roots; larger blocks are cut
    by a random line through the neutral element.
    """
    point: Dict[str, object] = {}
    e = group.neutral_point()
    tring = PolyRing(("t",))
    t = tring.gen("t")
    for members, rels in _blocks(group):
        if not rels:
            for m in members:
                point[m] = mpq(rng.randint(-bound, bound))
            continue
        for _ in range(tries):
            if len(members) == 1:
                images = {members[0]: t}
            else:
                images = {m: tring.const(e[m]) + rng.randint(-bound, bound) * t for m in members}
            polys = [r.compose(tring, {**{n: tring.const(0) for n in group.params if n not in images}, **images})
                     for r in rels]
            g = polys[0]
            for q in polys[1:]:
                g = _ugcd(g, q)
            if not g:
                continue
            roots = [r for r in _rational_roots(g) if len(members) == 1 or r != 0]
            if not roots:
                continue
            root = roots[rng.randrange(len(roots))]
            for m in members:
                point[m] = images[m].evaluate({"t": root}).constant_coeff()
            break
        else:
            raise ActionError(f"could not sample a rational point on the relations {[str(r) for r in rels]}")
    return point


def _ugcd(a: MPoly, b: MPoly) -> MPoly:
    from .groebner import univariate_gcd

    if not a:
        return b
    if not b:
        return a
    return univariate_gcd(a, b)


def random_group_points(group: GroupSpec, count: int, seed: int = 0) -> List[Dict[str, object]]:
    rng = random.Random(seed)
    return [random_group_point(group, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    identity: bool = True
    composition: str = "skipped"
    warnings: List[str] = field(default_factory=list)


def validate_action(a: GroupAction, seed: int = 0, spot_checks: int = 10,
                    strict: bool = False) -> ValidationReport:
    """Check the identity axiom, the composition axiom when a product map
    is given, and spot-check that ``h`` does not vanish identically on
    random group points (a warning unless ``strict``)."""
    report = ValidationReport()
    e = a.group.neutral_point()
    h_e = a.denominator.evaluate(e)
    if not h_e:
        raise ActionError("the denominator vanishes identically at the neutral element")
    for z, gp in zip(a.vars, a.numerators):
        if gp.evaluate(e) != h_e * a.ring.gen(z):
            raise ActionError(f"identity axiom fails for coordinate {z}: g(e, z) != z")

    if a.group.product is None:
        report.warnings.append("no product map given: composition axiom not checked")
    else:
        _check_composition(a)
        report.composition = "ok"

    rng = random.Random(seed)
    for _ in range(spot_checks):
        pt = random_group_point(a.group, rng)
        if not a.denominator.evaluate(pt):
            msg = f"denominator vanishes identically at the group point {_fmt_point(pt)}"
            if strict:
                raise ActionError(msg)
            report.warnings.append(msg)
            break
    return report


def _fmt_point(pt) -> str:
    return "(" + ",".join(str(v) for v in pt.values()) + ")"


def _check_composition(a: GroupAction) -> None:
    grp = a.group
    mu = grp.product_left
    ring = PolyRing(tuple(mu) + grp.params + a.vars)
    to_mu = dict(zip(grp.params, mu))
    # g(lam, z) as rational functions in the big ring
    inner = {z: f.to_ring(ring) for z, f in zip(a.vars, a.fractions)}
    outer_src = [f.to_ring(ring, {**to_mu}) for f in a.fractions]
    prod_src = grp.product[0].ring
    product = [p.to_ring(ring) for p in grp.product] if prod_src is not ring else list(grp.product)
    rels = [r.to_ring(ring) for r in grp.relations] + [r.to_ring(ring, to_mu) for r in grp.relations]
    gb = buchberger_reduced(Ideal(rels, ring), GREVLEX) if rels else None
    for z, outer, f in zip(a.vars, outer_src, a.fractions):
        lhs = substitute(outer, inner, ring)
        rhs = substitute(f.to_ring(ring), {p: RatFunc(q) for p, q in zip(grp.params, product)}, ring)
        diff = lhs.num * rhs.den - rhs.num * lhs.den
        if not diff:
            continue
        if gb is None or normal_form(diff, gb):
            den = squarefree_poly(lhs.den * rhs.den)
            if gb is None or normal_form(diff, saturate_by(gb, den)):
                raise ActionError(f"composition axiom fails for coordinate {z}")


# ---------------------------------------------------------------------------
# infinitesimal generators

def _nullspace(rows: List[List]) -> List[List]:
    """Exact rational null-space basis of a matrix given by rows."""
    if not rows:
        return []
    ncol = len(rows[0])
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for fcol in free:
        v = [mpq(0)] * ncol
        v[fcol] = mpq(1)
        for row, pc in enumerate(pivots):
            v[pc] = -A[row][fcol]
        first = next(x for x in v if x)
        if first < 0:
            v = [-x for x in v]
        basis.append(v)
    return basis


@dataclass
class InfinitesimalMatrix:
    entries: List[List[RatFunc]]
    kappa: int
    tangent: List[List]

    def column(self, j) -> List[RatFunc]:
        return [row[j] for row in self.entries]


def tangent_basis(group: GroupSpec) -> List[List]:
    e = group.neutral_point()
    rows = []
    for r in group.relations:
        rows.append([r.diff(p).evaluate(e).constant_coeff() for p in group.params])
    if not rows:
        return [[mpq(int(i == j)) for i in range(len(group.params))] for j in range(len(group.params))]
    return _nullspace(rows)


def infinitesimal_matrix(a: GroupAction) -> InfinitesimalMatrix:
    """Matrix whose columns are the infinitesimal generators of the action
    along a basis of the tangent space of the group at the neutral element."""
    e = a.group.neutral_point()
    h = a.denominator
    h_e = h.evaluate(e)
    if not h_e:
        raise ActionError("denominator vanishes at the neutral element")
    T = tangent_basis(a.group)
    vring = a.vring
    jac = []
    for gp in a.numerators:
        row = []
        for p in a.params:
            num = (gp.diff(p) * h - gp * h.diff(p)).evaluate(e)
            row.append(RatFunc(num.to_ring(vring), (h_e * h_e).to_ring(vring)))
        jac.append(row)
    entries = []
    for row in jac:
        out = []
        for v in T:
            acc = RatFunc(vring.zero)
            for c, t in zip(row, v):
                if t:
                    acc = acc + c * t
            out.append(acc)
        entries.append(out)
    return InfinitesimalMatrix(entries, len(T), T)
