"""Sparse multivariate polynomials with exact coefficients.

Monomials are plain tuples of exponents indexed by the variables of a
:class:`PolyRing`.  Coefficients live in the ring's domain: the rationals
(:data:`QQ`) or a rational-function field built by :mod:`ratinv.ratfunc`.
"""
from __future__ import annotations

from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from gmpy2 import mpq

from .errors import ContextError

Monomial = Tuple[int, ...]


class RationalField:
    """The field of rational numbers, backed by ``gmpy2.mpq``."""

    name = "QQ"
    zero = mpq(0)
    one = mpq(1)

    def convert(self, x):
        if type(x) is type(self.zero):
            return x
        if isinstance(x, MPoly):
            if not x.is_constant():
                raise ContextError("cannot use a non-constant polynomial as a rational")
            return x.constant_coeff()
        return mpq(x)

    def is_constant(self, c) -> bool:
        return True

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True when monomial ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class PolyRing:
    """An ordered variable context together with a coefficient domain.

    Rings are interned: two rings with the same names and domain are the
    same object, so context checks are identity checks.
    """

    _cache: Dict[tuple, "PolyRing"] = {}

    def __new__(cls, names: Sequence[str], domain=QQ):
        names = tuple(names)
        key = (names, id(domain))
        ring = cls._cache.get(key)
        if ring is None:
            if len(set(names)) != len(names):
                raise ContextError(f"duplicate variable names in {names}")
            ring = super().__new__(cls)
            ring.names = names
            ring.domain = domain
            ring.nvars = len(names)
            ring.index = {n: i for i, n in enumerate(names)}
            ring.zero_mono = (0,) * len(names)
            ring._domain_ref = domain  # keep domain alive for the id key
            cls._cache[key] = ring
        return ring

    def __reduce__(self):
        return (PolyRing, (self.names, self.domain))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.domain!r})"

    @property
    def zero(self) -> "MPoly":
        return MPoly(self, {})

    @property
    def one(self) -> "MPoly":
        return MPoly(self, {self.zero_mono: self.domain.one})

    def gen(self, name: str) -> "MPoly":
        try:
            i = self.index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r} in {self.names}") from None
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): self.domain.one})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def const(self, c) -> "MPoly":
        c = self.domain.convert(c)
        if not c:
            return self.zero
        return MPoly(self, {self.zero_mono: c})

    def monomial(self, exps: Monomial, coeff=1) -> "MPoly":
        c = self.domain.convert(coeff)
        return MPoly(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping) -> "MPoly":
        conv = self.domain.convert
        out = {}
        for m, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(m)] = c
        return MPoly(self, out)

    def convert(self, x) -> "MPoly":
        if isinstance(x, MPoly):
            if x.ring is self:
                return x
            raise ContextError(f"polynomial over {x.ring} used in {self}")
        return self.const(x)


class MPoly:
    """A polynomial as a map from exponent tuples to nonzero coefficients.

    Values are treated as immutable once built.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring is other.ring and self.terms == other.terms
        if self.is_constant():
            return self.constant_coeff() == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .render import render_poly

        return f"MPoly({render_poly(self)!r})"

    def __str__(self):
        from .render import render_poly

        return render_poly(self)

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring is not self.ring:
                raise ContextError(f"context mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return MPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(self.ring, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = self.ring.domain.convert(other)
            if not c:
                return self.ring.zero
            return MPoly(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, object] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return MPoly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant():
                raise ContextError("polynomial division by a non-constant; use RatFunc")
            other = other.constant_coeff()
        c = self.ring.domain.convert(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        inv = self.ring.domain.one / c
        return self * inv

    def mul_term(self, mono: Monomial, coeff) -> "MPoly":
        if not coeff:
            return self.ring.zero
        return MPoly(
            self.ring,
            {tuple(x + y for x, y in zip(m, mono)): c * coeff for m, c in self.terms.items()},
        )

    # -- inspection -----------------------------------------------------
    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and self.ring.zero_mono in t)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_mono, self.ring.domain.zero)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var) -> int:
        i = self._var_index(var)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def _var_index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.ring.index[var]
        except KeyError:
            raise ContextError(f"unknown variable {var!r}") from None

    def support(self) -> frozenset:
        """Names of the variables actually occurring."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return frozenset(self.ring.names[i] for i in used)

    def leading_term(self, order) -> Tuple[Monomial, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.ring)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coeff(self, order):
        return self.leading_term(order)[1]

    def sorted_terms(self, order) -> list:
        key = order.key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, order) -> "MPoly":
        if not self.terms:
            return self
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        return self / lc

    def coefficients(self):
        return list(self.terms.values())

    # -- calculus and substitution --------------------------------------
    def diff(self, var) -> "MPoly":
        i = self._var_index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return MPoly(self.ring, out)

    def as_univariate(self, var) -> Dict[int, "MPoly"]:
        """Split into ``{degree: coefficient polynomial}`` with respect to ``var``."""
        i = self._var_index(var)
        parts: Dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            parts.setdefault(e, {})[mm] = c
        return {e: MPoly(self.ring, t) for e, t in parts.items()}

    def evaluate(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute domain constants for some variables (same ring)."""
        idx = [(self.ring.index[n], self.ring.domain.convert(v)) for n, v in values.items()]
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            mm = list(m)
            for i, v in idx:
                e = mm[i]
                if e:
                    c = c * v ** e
                    mm[i] = 0
            if c:
                t = tuple(mm)
                w = out.get(t)
                out[t] = c if w is None else w + c
        return MPoly(self.ring, {m: c for m, c in out.items() if c})

    def compose(self, target: PolyRing, images: Mapping[str, "MPoly"]) -> "MPoly":
        """Ring map: send each variable to ``images[name]`` (a polynomial in
        ``target``) or, when absent, to the same-named variable of ``target``.
        """
        gens = []
        for n in self.ring.names:
            if n in images:
                gens.append(target.convert(images[n]))
            elif n in target.index:
                gens.append(target.gen(n))
            else:
                raise ContextError(f"variable {n!r} has no image in {target}")
        conv = target.domain.convert
        out = target.zero
        cache: Dict[tuple, MPoly] = {}
        for m, c in self.terms.items():
            term = target.const(conv(c))
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    p = cache.get(key)
                    if p is None:
                        p = gens[i] ** e
                        cache[key] = p
                    term = term * p
            out = out + term
        return out

    def to_ring(self, target: PolyRing, rename: Mapping[str, str] | None = None) -> "MPoly":
        """Re-index into ``target``; variables missing there must not occur."""
        rename = rename or {}
        pos = []
        for i, n in enumerate(self.ring.names):
            n2 = rename.get(n, n)
            j = target.index.get(n2)
            pos.append((i, j))
        conv = target.domain.convert
        out = {}
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, j in pos:
                if m[i]:
                    if j is None:
                        raise ContextError(
                            f"variable {self.ring.names[i]!r} does not exist in {target}"
                        )
                    e[j] += m[i]
            t = tuple(e)
            v = out.get(t)
            c = conv(c)
            out[t] = c if v is None else v + c
        return MPoly(target, {m: c for m, c in out.items() if c})

    def map_coeffs(self, fn: Callable, ring: PolyRing | None = None) -> "MPoly":
        ring = ring or self.ring
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return MPoly(ring, out)


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Add, subtract or multiply two polynomials of the same context."""
    if not isinstance(a, MPoly) or not isinstance(b, MPoly):
        raise TypeError("poly_arith expects two MPoly values")
    if a.ring is not b.ring:
        raise ContextError(f"context mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def vars_of(polys: Iterable[MPoly]) -> frozenset:
    used: set = set()
    for p in polys:
        used |= p.support()
    return frozenset(used)
