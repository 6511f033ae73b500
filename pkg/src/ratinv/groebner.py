"""Buchberger's algorithm and the ideal-theoretic utilities built on it.

Bases are computed over the ring's coefficient domain, which is either
the rationals or a fraction field ``QQ(z)``.  Pair handling follows the
Gebauer-Moeller update with the normal selection strategy (smallest lcm
first, ties broken by pair indices), and reduction always rewrites the
highest reducible term first, so results are deterministic.
"""
from __future__ import annotations

import heapq
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import ContextError, ExcludedLocusError, NotZeroDimensional
from .orders import GREVLEX, TermOrder
from .poly import QQ, MPoly, PolyRing, coprime, divides, mono_lcm
from .ratfunc import FractionField, RatFunc, poly_divmod, poly_gcd, poly_divexact

AUX = "_sat"


# ---------------------------------------------------------------------------
# containers

def clear_denominators(p: MPoly) -> MPoly:
    """Scale a polynomial with fraction-field coefficients so that every
    coefficient is a polynomial (primitive over QQ)."""
    if not isinstance(p.ring.domain, FractionField) or not p:
        return p
    field = p.ring.domain
    den = field.ring.one
    for c in p.terms.values():
        d = c.den
        if not d.is_constant():
            g = poly_gcd(den, d)
            den = den * poly_divexact(d, g)
    q = p * RatFunc(den) if not den.is_constant() else p
    num = None
    for c in q.terms.values():
        num = c.num if num is None else poly_gcd(num, c.num)
    if num is not None and not num.is_constant():
        q = q * RatFunc(num.ring.one, num)
    return q


class Ideal:
    """Generators of an ideal over the coefficient domain of ``ring``.

    Over a fraction field the generators are stored with cleared
    denominators; ``params`` names the parameter block in that case.
    """

    def __init__(self, gens: Iterable[MPoly], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ContextError("an empty ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring is not ring:
                raise ContextError(f"generator over {g.ring} in an ideal of {ring}")
        self.ring = ring
        self.gens = [clear_denominators(g) for g in gens if g]

    @property
    def field_tag(self) -> str:
        dom = self.ring.domain
        return "K" if dom is QQ else f"K({','.join(dom.ring.names)})"

    @property
    def params(self) -> Tuple[str, ...]:
        dom = self.ring.domain
        return () if dom is QQ else dom.ring.names

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}; {self.field_tag})"

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring is not self.ring:
            raise ContextError("sum of ideals from different contexts")
        return Ideal(self.gens + other.gens, self.ring)


class GroebnerBasis:
    """A Groebner basis (monic elements, sorted by ascending leading term)."""

    def __init__(self, polys: Sequence[MPoly], order: TermOrder, ring: PolyRing,
                 reduced: bool = True):
        self.ring = ring
        self.order = order
        self.polys = list(polys)
        self.reduced = reduced
        self.leads = [p.leading_monomial(order) for p in self.polys]
        self.warnings: List[str] = []
        self._dim = None

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring is other.ring
                and self.polys == other.polys)

    def __repr__(self):
        return f"GroebnerBasis({self.render()}, order={self.order!r})"

    def render(self) -> List[str]:
        from .render import render_basis

        return render_basis(self.polys, self.order)

    @property
    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leads)

    def reduce(self, p: MPoly) -> MPoly:
        return normal_form(p, self)

    def contains(self, p: MPoly) -> bool:
        return not normal_form(p, self)

    def is_zero_dimensional(self) -> bool:
        return is_zero_dimensional(self)

    def dimension(self) -> int:
        if self._dim is None:
            self._dim = ideal_dimension(self)
        return self._dim

    def standard_monomials(self):
        return standard_monomials(self)

    def degree(self) -> int:
        return len(standard_monomials(self))


def _as_polys(ideal) -> Tuple[List[MPoly], PolyRing]:
    if isinstance(ideal, Ideal):
        return list(ideal.gens), ideal.ring
    if isinstance(ideal, GroebnerBasis):
        return list(ideal.polys), ideal.ring
    polys = list(ideal)
    if not polys:
        raise ContextError("cannot infer the ring of an empty generator list")
    return polys, polys[0].ring


# ---------------------------------------------------------------------------
# reduction

def _item(p: MPoly, order: TermOrder):
    lm, lc = p.leading_term(order)
    tail = [(m, c) for m, c in p.terms.items() if m != lm]
    return lm, _mask(lm), lc, tail


class _Reducer:
    """Leading data of a divisor list, prepared for fast lookups."""

    __slots__ = ("items",)

    def __init__(self, polys: Sequence[MPoly] = (), order: TermOrder | None = None,
                 items=None):
        self.items = items if items is not None else [_item(p, order) for p in polys]

    def find(self, m, mmask):
        for lm, mask, lc, tail in self.items:
            if mask & ~mmask == 0 and divides(lm, m):
                return lm, lc, tail
        return None


def _mask(m) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def _reduce_terms(terms: dict, red: _Reducer, key, tail_only_from=None) -> dict:
    """Fully reduce a term dict; returns the remainder terms."""
    p = dict(terms)
    heap = [(_neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        hit = red.find(m, _mask(m))
        if hit is None:
            rem[m] = c
            continue
        lm, lc, tail = hit
        q = tuple(x - y for x, y in zip(m, lm))
        coef = c if lc == 1 else c / lc
        for mm, cc in tail:
            t = tuple(x + y for x, y in zip(mm, q))
            v = p.get(t)
            if v is None:
                p[t] = -(coef * cc)
                heapq.heappush(heap, (_neg(key(t)), t))
            else:
                v = v - coef * cc
                if v:
                    p[t] = v
                else:
                    del p[t]
    return rem


def _neg(k):
    return tuple(-x for x in k)


def normal_form(p: MPoly, gb, order: TermOrder | None = None) -> MPoly:
    """Remainder of ``p`` on division by ``gb`` (a basis or polynomial list)."""
    if isinstance(gb, GroebnerBasis):
        polys, order = gb.polys, gb.order
    else:
        polys = list(gb)
        order = order or GREVLEX
    if not polys or not p:
        return p
    if polys[0].ring is not p.ring:
        raise ContextError(f"normal form of a polynomial over {p.ring} by a basis over {polys[0].ring}")
    red = _Reducer(polys, order)
    return MPoly(p.ring, _reduce_terms(p.terms, red, order.key(p.ring)))


# ---------------------------------------------------------------------------
# Buchberger

def _monic(p: MPoly, order: TermOrder) -> MPoly:
    return p.monic(order)


def _spoly(f: MPoly, g: MPoly, lf, lg) -> MPoly:
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(tuple(x - y for x, y in zip(lcm, lf)), f.ring.domain.one)
    b = g.mul_term(tuple(x - y for x, y in zip(lcm, lg)), g.ring.domain.one)
    return a - b


def _interreduce_inputs(polys: List[MPoly], order: TermOrder) -> List[MPoly]:
    key = order.key(polys[0].ring) if polys else None
    f1 = [_monic(p, order) for p in polys if p]
    while True:
        f1.sort(key=lambda p: key(p.leading_monomial(order)))
        f = f1
        f1 = []
        for i, p in enumerate(f):
            r = normal_form(p, f1, order) if f1 else p
            if r:
                f1.append(_monic(r, order))
        if f1 == f:
            return f1


def buchberger_reduced(ideal, order: TermOrder = GREVLEX, strategy: str = "sugar") -> GroebnerBasis:
    """The reduced monic Groebner basis of ``ideal`` for ``order``.

    ``strategy`` picks the next pair: ``"normal"`` takes the smallest lcm,
    ``"sugar"`` the smallest sugar degree first.  Both give the same basis.
    """
    if strategy not in ("normal", "sugar"):
        raise ValueError(f"unknown selection strategy {strategy!r}")
    polys, ring = _as_polys(ideal)
    polys = [p for p in polys if p]
    if not polys:
        return GroebnerBasis([], order, ring)
    key = order.key(ring)
    f = _interreduce_inputs(polys, order)
    if any(p.is_constant() for p in f):
        return GroebnerBasis([ring.one], order, ring)
    lms: List[tuple] = []
    G: set = set()
    B: Dict[tuple, tuple] = {}

    def update(G, B, ih):
        mh = lms[ih]
        C = sorted(G)
        D = []
        for pos, ig in enumerate(C):
            mg = lms[ig]
            lcm_hg = mono_lcm(mh, mg)
            if coprime(mh, mg):
                D.append(ig)
                continue
            redundant = False
            for ipx in C[pos + 1:]:
                if divides(mono_lcm(mh, lms[ipx]), lcm_hg):
                    redundant = True
                    break
            if not redundant:
                for ipx in D:
                    if divides(mono_lcm(mh, lms[ipx]), lcm_hg):
                        redundant = True
                        break
            if not redundant:
                D.append(ig)
        E = [ig for ig in D if not coprime(mh, lms[ig])]
        B_new = {}
        for (i1, i2), lcm12 in B.items():
            if (not divides(mh, lcm12) or mono_lcm(lms[i1], mh) == lcm12
                    or mono_lcm(lms[i2], mh) == lcm12):
                B_new[(i1, i2)] = lcm12
        for ig in E:
            B_new[(ig, ih)] = mono_lcm(lms[ig], mh)
        G_new = {ig for ig in G if not divides(mh, lms[ig])}
        G_new.add(ih)
        return G_new, B_new

    basis: List[MPoly] = []
    items: List[tuple] = []
    sugar: List[int] = []
    pair_sugar: Dict[tuple, int] = {}

    def add(p, sug):
        basis.append(p)
        items.append(_item(p, order))
        lms.append(items[-1][0])
        sugar.append(sug)
        return len(basis) - 1

    def select():
        if strategy == "sugar":
            for pr in B:
                if pr not in pair_sugar:
                    i, j = pr
                    lcm = B[pr]
                    pair_sugar[pr] = max(sugar[i] + sum(lcm) - sum(lms[i]),
                                         sugar[j] + sum(lcm) - sum(lms[j]))
            return min(B, key=lambda pr: (pair_sugar[pr], key(B[pr]), pr))
        return min(B, key=lambda pr: (key(B[pr]), pr))

    for p in f:
        G, B = update(G, B, add(p, p.total_degree()))

    while B:
        pair = select()
        del B[pair]
        i, j = pair
        s = _spoly(basis[i], basis[j], lms[i], lms[j])
        red = _Reducer(items=[items[k] for k in sorted(G)])
        h = MPoly(ring, _reduce_terms(s.terms, red, key))
        if not h:
            continue
        h = _monic(h, order)
        if h.is_constant():
            return GroebnerBasis([ring.one], order, ring)
        sug = pair_sugar.get(pair, 0)
        G, B = update(G, B, add(h, max(sug, h.total_degree())))

    return _reduce_basis([basis[k] for k in sorted(G)], order, ring)


def _reduce_basis(polys: List[MPoly], order: TermOrder, ring: PolyRing) -> GroebnerBasis:
    """Minimalize, inter-reduce and sort a Groebner basis."""
    key = order.key(ring)
    items = [(p.leading_monomial(order), p) for p in polys]
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for k, (lm, p) in enumerate(items):
        if any(divides(lm2, lm) for lm2, _ in minimal):
            continue
        if any(divides(lm2, lm) and lm2 != lm for lm2, _ in items[k + 1:]):
            continue
        minimal.append((lm, p))
    out = []
    for k, (lm, p) in enumerate(minimal):
        others = [q for j, (_, q) in enumerate(minimal) if j != k]
        lc = p.terms[lm]
        tail = {m: c for m, c in p.terms.items() if m != lm}
        if others and tail:
            tail = _reduce_terms(tail, _Reducer(others, order), key)
        terms = {lm: lc}
        terms.update(tail)
        out.append(_monic(MPoly(ring, terms), order))
    return GroebnerBasis(out, order, ring)


def s_polynomial_audit(gb: GroebnerBasis) -> List[Tuple[int, int]]:
    """Pairs whose S-polynomial does not reduce to zero, plus reducedness
    violations reported as ``(i, i)``.  An empty list certifies the basis."""
    bad = []
    polys = gb.polys
    for i, j in combinations(range(len(polys)), 2):
        s = _spoly(polys[i], polys[j], gb.leads[i], gb.leads[j])
        if normal_form(s, polys, gb.order):
            bad.append((i, j))
    for i, p in enumerate(polys):
        if p.terms[gb.leads[i]] != 1:
            bad.append((i, i))
            continue
        for m in p.terms:
            if any(divides(lm, m) for j, lm in enumerate(gb.leads) if j != i):
                bad.append((i, i))
                break
    return bad


# ---------------------------------------------------------------------------
# elimination and saturation

def subring(ring: PolyRing, keep: Iterable[str]) -> PolyRing:
    keep = set(keep)
    return PolyRing([n for n in ring.names if n in keep], ring.domain)


def eliminate(ideal, keep: Sequence[str], order: TermOrder) -> GroebnerBasis:
    """Groebner basis of ``ideal`` intersected with the subring on ``keep``.

    ``order`` must be an elimination order for the complement of ``keep``.
    The result lives in the subring and carries the induced order.
    """
    polys, ring = _as_polys(ideal)
    gb = buchberger_reduced(Ideal(polys, ring), order)
    sub = subring(ring, keep)
    kept = [p for p in gb.polys if p.support() <= set(keep)]
    sub_order = order.restrict(sub.names)
    return GroebnerBasis([p.to_ring(sub) for p in kept], sub_order, sub)


def with_aux(ring: PolyRing, name: str = AUX) -> PolyRing:
    if name in ring.index:
        raise ContextError(f"auxiliary variable {name!r} already in use")
    return PolyRing(ring.names + (name,), ring.domain)


def saturate_by(ideal, h: MPoly, order: TermOrder = GREVLEX) -> GroebnerBasis:
    """Basis of ``ideal : h^oo`` obtained by adjoining ``t*h - 1`` and
    eliminating ``t``."""
    polys, ring = _as_polys(ideal)
    if not h:
        raise ValueError("cannot saturate by the zero polynomial")
    if h.is_constant():
        return buchberger_reduced(Ideal(polys, ring), order)
    big = with_aux(ring)
    lifted = [p.to_ring(big) for p in polys]
    t = big.gen(AUX)
    lifted.append(t * h.to_ring(big) - 1)
    if order.kind == "block":
        blocks = [((AUX,), "grevlex")] + list(order.blocks)
    else:
        blocks = [((AUX,), "grevlex"), (order.ranked_names(ring), order.kind)]
    elim = TermOrder("block", blocks=blocks)
    gb = eliminate(Ideal(lifted, big), ring.names, elim)
    polys = [p.to_ring(ring) for p in gb.polys]
    return GroebnerBasis(polys, order, ring) if order == gb.order else buchberger_reduced(Ideal(polys, ring), order)


# ---------------------------------------------------------------------------
# coefficient fields

def param_ring(mains: Sequence[str], params: Sequence[str]) -> PolyRing:
    """The ring ``QQ(params)[mains]``."""
    return PolyRing(mains, FractionField(PolyRing(params)))


def to_param_field(p: MPoly, target: PolyRing) -> MPoly:
    """Read a polynomial in ``params + mains`` as one in ``QQ(params)[mains]``."""
    field = target.domain
    pring = field.ring
    src = p.ring
    ppos = [(src.index[n], i) for i, n in enumerate(pring.names) if n in src.index]
    mpos = [(src.index[n], i) for i, n in enumerate(target.names) if n in src.index]
    used = {i for i, _ in ppos} | {i for i, _ in mpos}
    for i, n in enumerate(src.names):
        if i not in used and any(m[i] for m in p.terms):
            raise ContextError(f"variable {n!r} is neither a parameter nor a main variable")
    groups: Dict[tuple, dict] = {}
    for m, c in p.terms.items():
        zm = [0] * pring.nvars
        for i, j in ppos:
            zm[j] = m[i]
        Zm = [0] * target.nvars
        for i, j in mpos:
            Zm[j] = m[i]
        groups.setdefault(tuple(Zm), {})[tuple(zm)] = c
    return MPoly(target, {m: RatFunc(MPoly(pring, t)) for m, t in groups.items()})


def lift_to_param_field(gb: GroebnerBasis, params: Sequence[str],
                        mains: Sequence[str] | None = None) -> GroebnerBasis:
    """Reinterpret a basis computed under a block order with the ``params``
    block minimal as a reduced basis over ``QQ(params)``."""
    ring = gb.ring
    if mains is None:
        mains = [n for n in ring.names if n not in set(params)]
    target = param_ring(mains, params)
    order = gb.order.restrict(mains)
    key = order.key(target)
    lifted = [to_param_field(p, target) for p in gb.polys]
    if any(p.is_constant() for p in lifted if p):
        return GroebnerBasis([target.one], order, target)
    lifted.sort(key=lambda q: key(q.leading_monomial(order)))
    keep = []
    for q in lifted:
        lm = q.leading_monomial(order)
        if any(divides(k.leading_monomial(order), lm) for k in keep):
            continue
        keep.append(q.monic(order))
    return _reduce_basis(keep, order, target)


def fraction_field_basis(polys: Iterable[MPoly], params: Sequence[str], mains: Sequence[str],
                         order: TermOrder) -> GroebnerBasis:
    """Buchberger directly over ``QQ(params)[mains]``."""
    target = param_ring(mains, params)
    conv = []
    for p in polys:
        if p.ring is target:
            conv.append(p)
        elif isinstance(p.ring.domain, FractionField):
            conv.append(p)
        else:
            conv.append(to_param_field(p, target))
    return buchberger_reduced(Ideal(conv, target), order)


# ---------------------------------------------------------------------------
# zero-dimensional utilities

def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """Every variable has a pure power among the leading monomials.  The
    unit ideal (empty variety) is reported as not zero-dimensional."""
    if gb.is_unit or not gb.polys:
        return False
    n = gb.ring.nvars
    found = [False] * n
    for lm in gb.leads:
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            found[nz[0]] = True
    return all(found)


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension: size of a largest variable set containing the
    support of no leading monomial (-1 for the unit ideal)."""
    if gb.is_unit:
        return -1
    n = gb.ring.nvars
    supports = [_mask(lm) for lm in gb.leads]
    best = 0

    def ok(mask):
        return all(s & ~mask for s in supports)

    def dfs(start, mask, size):
        nonlocal best
        if size > best:
            best = size
        if size + (n - start) <= best:
            return
        for i in range(start, n):
            m2 = mask | (1 << i)
            if ok(m2):
                dfs(i + 1, m2, size + 1)

    dfs(0, 0, 0)
    return best


def standard_monomials(gb: GroebnerBasis) -> List[tuple]:
    """Monomials outside the leading-term ideal, ascending in the order."""
    if not is_zero_dimensional(gb):
        if gb.is_unit:
            return []
        raise NotZeroDimensional("standard monomials need a zero-dimensional ideal")
    n = gb.ring.nvars
    seen = {gb.ring.zero_mono}
    frontier = [gb.ring.zero_mono]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                t = m[:i] + (m[i] + 1,) + m[i + 1:]
                if t in seen or any(divides(lm, t) for lm in gb.leads):
                    continue
                seen.add(t)
                nxt.append(t)
        frontier = nxt
    key = gb.order.key(gb.ring)
    return sorted(seen, key=key)


def _solve(vectors: List[List], rhs: List, domain):
    """Solve ``sum x_i vectors[i] = rhs`` over a field; None when inconsistent."""
    nrow = len(rhs)
    ncol = len(vectors)
    A = [[vectors[j][r] for j in range(ncol)] + [rhs[r]] for r in range(nrow)]
    pivots = []
    row = 0
    for col in range(ncol):
        piv = next((r for r in range(row, nrow) if A[r][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = domain.one / A[row][col]
        A[row] = [x * inv if x else x for x in A[row]]
        for r in range(nrow):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b if b else a for a, b in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
    for r in range(row, nrow):
        if A[r][ncol]:
            return None
    x = [domain.zero] * ncol
    for r, col in enumerate(pivots):
        x[col] = A[r][ncol]
    return x


def minimal_polynomial(gb: GroebnerBasis, var: str, out_var: str = "zeta") -> MPoly:
    """Monic minimal polynomial of ``var`` modulo a zero-dimensional basis,
    as a univariate polynomial in ``out_var`` over the same domain."""
    std = standard_monomials(gb)
    if not std:
        raise NotZeroDimensional("the unit ideal has no minimal polynomials")
    index = {m: i for i, m in enumerate(std)}
    ring = gb.ring
    dom = ring.domain
    x = ring.gen(var)

    def vec(p):
        v = [dom.zero] * len(std)
        for m, c in p.terms.items():
            v[index[m]] = c
        return v

    vecs = []
    power = ring.one
    out_ring = PolyRing((out_var,), dom)
    for k in range(len(std) + 1):
        nf = normal_form(power, gb)
        v = vec(nf)
        if vecs:
            sol = _solve(vecs, [-c for c in v], dom)
            if sol is not None:
                terms = {(k,): dom.one}
                for i, c in enumerate(sol):
                    if c:
                        terms[(i,)] = c
                return MPoly(out_ring, terms)
        elif not any(v):
            return out_ring.one
        vecs.append(v)
        power = normal_form(power * x, gb)
    raise NotZeroDimensional("no linear dependency found among powers")


def univariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic gcd of univariate polynomials over a field domain."""
    order = TermOrder("lex")
    while g:
        _, r = poly_divmod(f, g, order)
        f, g = g, r
    return f.monic(order) if f else f


def is_squarefree_univariate(f: MPoly) -> bool:
    if f.ring.nvars != 1:
        raise ContextError("squarefree test expects a univariate polynomial")
    d = f.diff(f.ring.names[0])
    if not d:
        return True
    return univariate_gcd(f, d).is_constant()


def is_radical_zero_dim(gb: GroebnerBasis) -> bool:
    """Seidenberg's criterion in characteristic zero: a zero-dimensional
    ideal is radical iff every variable's minimal polynomial is squarefree."""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("radical test needs a zero-dimensional ideal")
    for n in gb.ring.names:
        if not is_squarefree_univariate(minimal_polynomial(gb, n)):
            return False
    return True


def specialize(gb: GroebnerBasis, point: Mapping[str, object]) -> GroebnerBasis:
    """Substitute rational values for the parameters of a ``QQ(z)`` basis.

    The image is a Groebner basis of the specialized ideal only for points
    off a proper closed set; a warning saying so is attached to the result.
    """
    dom = gb.ring.domain
    if not isinstance(dom, FractionField):
        raise ContextError("specialize expects a basis over a fraction field")
    missing = [n for n in dom.ring.names if n not in point]
    if missing:
        raise ContextError(f"point does not bind {missing}")
    target = PolyRing(gb.ring.names)
    out = []
    for p in gb.polys:
        terms = {}
        for m, c in p.terms.items():
            try:
                v = c.evaluate(point)
            except ZeroDivisionError:
                raise ExcludedLocusError(
                    "point (" + ",".join(str(point[n]) for n in dom.ring.names)
                    + ") makes a denominator of the basis vanish"
                ) from None
            if v:
                terms[m] = v
        out.append(MPoly(target, terms))
    res = GroebnerBasis(out, gb.order, target)
    res.warnings.append("specialized basis is guaranteed only off a proper closed subset")
    return res
