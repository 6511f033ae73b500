"""Graph ideal of an action, generating rational invariants, rewriting."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .action import GroupAction
from .errors import ContextError, InternalConsistencyError, NotExpressible
from .groebner import (AUX, GroebnerBasis, Ideal, eliminate, fraction_field_basis,
                       lift_to_param_field, normal_form, param_ring, saturate_by, specialize)
from .orders import TermOrder
from .poly import MPoly, PolyRing
from .ratfunc import FractionField, RatFunc, substitute

Y_PREFIXES = ("y", "w", "u", "v")


def fresh_names(count: int, taken) -> Tuple[str, ...]:
    """``y1..yk``, or the first of w/u/v prefixes free of collisions."""
    taken = set(taken)
    for pre in Y_PREFIXES:
        names = tuple(f"{pre}{i}" for i in range(1, count + 1))
        if not taken & set(names):
            return names
    raise ContextError("no collision-free names for the rewriting variables")


def target_order(action: GroupAction, kind: str = "grevlex",
                 ranking: Sequence[str] | None = None) -> TermOrder:
    ranking = tuple(ranking) if ranking else action.targets
    if sorted(ranking) != sorted(action.targets):
        raise ContextError(f"ranking must list exactly the variables {action.targets}")
    return TermOrder(kind, ranking)


def graph_generators(action: GroupAction, ring: PolyRing) -> List[MPoly]:
    """``G``, ``d_i Z_i - n_i`` for the reduced fractions ``n_i/d_i`` of the
    action, and ``t*sqf(h) - 1`` when the denominator is non-constant."""
    gens = [r.to_ring(ring) for r in action.group.relations]
    for Zi, f in zip(action.targets, action.fractions):
        gens.append(f.den.to_ring(ring) * ring.gen(Zi) - f.num.to_ring(ring))
    if not action.denominator.is_constant():
        gens.append(ring.gen(AUX) * action.h_squarefree().to_ring(ring) - 1)
    return gens


class GraphIdeal:
    """The graph ideal ``O`` in ``QQ[Z, z]`` and its extension over ``QQ(z)``.

    Both bases are computed on first access.
    """

    def __init__(self, action: GroupAction, order: TermOrder | None = None):
        self.action = action
        self.order = order or target_order(action)
        self._O: Optional[GroebnerBasis] = None
        self._O_ext: Optional[GroebnerBasis] = None
        self._saturated: Optional[GroebnerBasis] = None

    @property
    def elim_names(self) -> Tuple[str, ...]:
        a = self.action
        return a.params + ((AUX,) if not a.denominator.is_constant() else ())

    @property
    def O(self) -> GroebnerBasis:
        if self._O is None:
            a = self.action
            ring = PolyRing(self.elim_names + a.targets + a.vars)
            zorder = self.order
            blocks = [(self.elim_names, "grevlex"),
                      (zorder.ranked_names(PolyRing(a.targets)), zorder.kind),
                      (a.vars, "grevlex")]
            order = TermOrder("block", blocks=blocks)
            self._O = eliminate(Ideal(graph_generators(a, ring), ring), a.targets + a.vars, order)
            self._check_graph(self._O)
        return self._O

    def _check_graph(self, O: GroebnerBasis) -> None:
        Z, z = set(self.action.targets), set(self.action.vars)
        for p in O:
            s = p.support()
            if not s & Z or not s & z:
                raise InternalConsistencyError(f"graph ideal meets a coordinate ring: {p}")
        swap = {**dict(zip(self.action.targets, self.action.vars)),
                **dict(zip(self.action.vars, self.action.targets))}
        for p in O:
            if normal_form(p.to_ring(O.ring, swap), O):
                raise InternalConsistencyError("graph ideal is not symmetric under z <-> Z")

    @property
    def O_ext(self) -> GroebnerBasis:
        if self._O_ext is None:
            self._O_ext = lift_to_param_field(self.O, self.action.vars, self.action.targets)
        return self._O_ext

    def O_ext_fraction_field(self) -> GroebnerBasis:
        """``O^e`` by Buchberger over ``QQ(z)``, independent of ``O``."""
        a = self.action
        names = self.elim_names + a.targets
        ring = param_ring(names, a.vars)
        base = PolyRing(self.elim_names + a.targets + a.vars)
        gens = graph_generators(a, base)
        zorder = self.order
        order = TermOrder("block", blocks=[(self.elim_names, "grevlex"),
                                           (zorder.ranked_names(PolyRing(a.targets)), zorder.kind)])
        gb = fraction_field_basis(gens, a.vars, names, order)
        target = param_ring(a.targets, a.vars)
        kept = [p.to_ring(target) for p in gb if not p.support() & set(self.elim_names)]
        return GroebnerBasis(kept, self.order, target)

    @property
    def orbit_dim(self) -> int:
        return self.O_ext.dimension()

    def saturated_group(self) -> GroebnerBasis:
        """Basis of ``G : h^oo`` in ``QQ[lam, z]``."""
        if self._saturated is None:
            a = self.action
            rels = [r.to_ring(a.ring) for r in a.group.relations]
            if rels:
                self._saturated = saturate_by(Ideal(rels, a.ring), a.h_squarefree())
        return self._saturated


def graph_ideal(action: GroupAction, order: TermOrder | None = None) -> GraphIdeal:
    gi = GraphIdeal(action, order)
    gi.O_ext
    return gi


# ---------------------------------------------------------------------------
# invariants

def normalize_invariant(r: RatFunc) -> Tuple[RatFunc, object]:
    """``(r/k, k)`` where ``k`` is the grevlex leading coefficient of the
    numerator of ``r``."""
    k = r.numerator_lc()
    return (r if k == 1 else r / k), k


@dataclass
class InvariantSet:
    entries: List[Tuple[RatFunc, Tuple[int, tuple]]]
    names: Tuple[str, ...] = ()

    @property
    def values(self) -> List[RatFunc]:
        return [r for r, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.values)

    def index(self) -> Dict[RatFunc, int]:
        return {r: i for i, (r, _) in enumerate(self.entries)}

    def render(self) -> List[str]:
        return [str(r) for r in self.values]

    def bindings(self) -> Dict[str, RatFunc]:
        return dict(zip(self.names, self.values))


def extract_invariants(gb: GroebnerBasis, taken=()) -> InvariantSet:
    """Non-constant coefficients of a ``QQ(z)`` basis, normalized and
    deduplicated in order of appearance."""
    seen: Dict[RatFunc, int] = {}
    entries = []
    for i, p in enumerate(gb.polys):
        for m, c in p.sorted_terms(gb.order):
            if c.is_constant():
                continue
            r, _ = normalize_invariant(c)
            if r not in seen:
                seen[r] = len(entries)
                entries.append((r, (i, m)))
    field = gb.ring.domain
    taken = set(taken) | set(gb.ring.names) | set(field.ring.names)
    return InvariantSet(entries, fresh_names(len(entries), taken))


def verify_invariant(r: RatFunc, action: GroupAction, gi: GraphIdeal | None = None) -> bool:
    """Whether ``r(g(lam, z)) = r(z)`` modulo ``G : h^oo``."""
    if r.ring is not action.vring:
        raise ContextError("invariant candidate must be a function of the action variables")
    ring = action.ring
    images = {z: f for z, f in zip(action.vars, action.fractions)}
    moved = substitute(r.to_ring(ring), images, ring)
    rr = r.to_ring(ring)
    diff = moved.num * rr.den - rr.num * moved.den
    if not diff:
        return True
    gi = gi or GraphIdeal(action)
    sat = gi.saturated_group()
    if sat is None:
        return False
    return not normal_form(diff, sat)


def generating_invariants(gi: GraphIdeal, verify: bool = True) -> InvariantSet:
    inv = extract_invariants(gi.O_ext, gi.action.params)
    if verify:
        _verify_all(inv, gi)
    return inv


def _verify_all(inv: InvariantSet, gi: GraphIdeal) -> None:
    for r in inv:
        if not verify_invariant(r, gi.action, gi):
            raise InternalConsistencyError(f"basis coefficient {r} is not invariant")


# ---------------------------------------------------------------------------
# rewriting

@dataclass
class RewriteResult:
    formula: RatFunc
    alpha: tuple
    verified: bool
    names: Tuple[str, ...]

    def __str__(self):
        return str(self.formula)


def replace_coefficients(gb: GroebnerBasis, inv: InvariantSet) -> Tuple[List[MPoly], PolyRing, TermOrder]:
    """The basis with each coefficient ``k*r_i`` replaced by ``k*y_i``, in
    ``QQ[Z, y]`` under a block order ``Z >> y``."""
    mains = gb.ring.names
    ring = PolyRing(mains + inv.names)
    idx = inv.index()
    out = []
    for p in gb.polys:
        terms: Dict[tuple, object] = {}
        for m, c in p.terms.items():
            if c.is_constant():
                key = m + (0,) * len(inv.names)
                terms[key] = terms.get(key, 0) + c.constant_value()
                continue
            r, k = normalize_invariant(c)
            j = idx.get(r)
            if j is None:
                raise ContextError(f"coefficient {c} is not in the invariant set")
            key = m + tuple(int(i == j) for i in range(len(inv.names)))
            terms[key] = terms.get(key, 0) + k
        out.append(ring.from_dict(terms))
    gorder = gb.order
    if gorder.kind == "block":
        blocks = list(gorder.blocks)
    else:
        blocks = [(gorder.ranked_names(gb.ring), gorder.kind)]
    order = TermOrder("block", blocks=blocks + [(inv.names, "grevlex")])
    return out, ring, order


def rewrite_invariant(target: RatFunc, inv: InvariantSet, gb: GroebnerBasis,
                      rename: Mapping[str, str]) -> RewriteResult:
    """Express ``target`` as a rational function of the invariants.

    ``rename`` maps the source variables to the main variables of ``gb``.
    """
    qy, ring, order = replace_coefficients(gb, inv)
    mains = gb.ring.names
    ynames = inv.names
    yring = PolyRing(ynames)
    a = normal_form(target.num.to_ring(ring, rename), qy, order)
    b = normal_form(target.den.to_ring(ring, rename), qy, order)
    if not b:
        raise NotExpressible("the denominator reduces to zero")

    def split(p):
        parts: Dict[tuple, Dict[tuple, object]] = {}
        for m, c in p.terms.items():
            parts.setdefault(m[:len(mains)], {})[m[len(mains):]] = c
        return {k: MPoly(yring, v) for k, v in parts.items()}

    pa, pb = split(a), split(b)
    zkey = gb.order.key(gb.ring)
    binds = inv.bindings()
    src = target.ring
    for alpha in sorted(pb, key=zkey):
        b_alpha = pb[alpha]
        if not substitute(b_alpha, binds, src):
            continue
        a_alpha = pa.get(alpha, yring.zero)
        formula = RatFunc(a_alpha, b_alpha)
        back = substitute(formula, binds, src)
        if back != target:
            raise InternalConsistencyError(f"rewrite of {target} does not round-trip")
        return RewriteResult(formula, alpha, True, ynames)
    raise NotExpressible(f"{target} is not expressible in the invariants")


def rewrite_with_graph(target: RatFunc, gi: GraphIdeal, inv: InvariantSet | None = None) -> RewriteResult:
    if not verify_invariant(target, gi.action, gi):
        raise NotExpressible(f"{target} is not an invariant of the action")
    inv = inv or generating_invariants(gi)
    rename = dict(zip(gi.action.vars, gi.action.targets))
    return rewrite_invariant(target, inv, gi.O_ext, rename)


def orbit_ideal_at(gi: GraphIdeal, point) -> GroebnerBasis:
    """Orbit-closure ideal at a point (a sequence or a name-to-value map)."""
    if not isinstance(point, Mapping):
        point = list(point)
        if len(point) != len(gi.action.vars):
            raise ContextError("point arity differs from the number of variables")
        point = dict(zip(gi.action.vars, point))
    return specialize(gi.O_ext, point)
