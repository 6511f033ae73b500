"""Multivariate GCD over the integers and normalized rational functions.

The GCD is the classical recursive one: strip monomial and integer
contents, split off variables occurring in only one operand, then run a
subresultant pseudo-remainder sequence in a main variable and take the
primitive part of its last nonzero member.  Internally polynomials are ``{exponents: int}`` dicts.
"""
from __future__ import annotations

from math import gcd as igcd
from typing import Dict, Mapping, Tuple

from gmpy2 import mpq, mpz

from .errors import ContextError
from .orders import GREVLEX
from .poly import QQ, MPoly, PolyRing

IntPoly = Dict[Tuple[int, ...], int]


# ---------------------------------------------------------------------------
# integer dict polynomials

def _to_int(p: MPoly) -> Tuple[IntPoly, object]:
    """Return ``(q, s)`` with ``p == s*q``, ``q`` integral and primitive."""
    den = mpz(1)
    for c in p.terms.values():
        d = c.denominator
        if d != 1:
            den = den * d // igcd(den, d)
    q = {m: mpz(c * den) for m, c in p.terms.items()}
    cont = _icontent(q)
    lead = q[max(q)]
    if lead < 0:
        cont = -cont
    if cont != 1:
        q = {m: c // cont for m, c in q.items()}
    return q, mpq(cont, den)


def _from_int(ring: PolyRing, q: IntPoly, scale=1) -> MPoly:
    scale = mpq(scale)
    return MPoly(ring, {m: mpq(c) * scale for m, c in q.items()})


def _icontent(q: IntPoly):
    g = mpz(0)
    for c in q.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _mul(a: IntPoly, b: IntPoly) -> IntPoly:
    out: IntPoly = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _sub(a: IntPoly, b: IntPoly) -> IntPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _shift(a: IntPoly, mono, sign=1) -> IntPoly:
    if not any(mono):
        return a
    return {tuple(x + sign * y for x, y in zip(m, mono)): c for m, c in a.items()}


def _scale(a: IntPoly, c) -> IntPoly:
    return {m: v * c for m, v in a.items()}


def _min_mono(a: IntPoly):
    it = iter(a)
    low = list(next(it))
    for m in it:
        for i, e in enumerate(m):
            if e < low[i]:
                low[i] = e
    return tuple(low)


def _vars(a: IntPoly) -> set:
    s = set()
    for m in a:
        for i, e in enumerate(m):
            if e:
                s.add(i)
    return s


def _deg(a: IntPoly, i: int) -> int:
    return max(m[i] for m in a)


def _coeffs(a: IntPoly, i: int) -> Dict[int, IntPoly]:
    parts: Dict[int, IntPoly] = {}
    for m, c in a.items():
        e = m[i]
        parts.setdefault(e, {})[m[:i] + (0,) + m[i + 1:]] = c
    return parts


def _is_const(a: IntPoly) -> bool:
    return len(a) == 1 and not any(next(iter(a)))


def _normal_sign(a: IntPoly) -> IntPoly:
    if a[max(a)] < 0:
        return {m: -c for m, c in a.items()}
    return a


def _divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient ``a/b``; raises ``ArithmeticError`` when inexact."""
    if len(b) == 1:
        (mb, cb), = b.items()
        out = {}
        for m, c in a.items():
            q, r = divmod(c, cb)
            mm = tuple(x - y for x, y in zip(m, mb))
            if r or min(mm) < 0:
                raise ArithmeticError("inexact polynomial division")
            out[mm] = q
        return out
    lb = max(b)
    cb = b[lb]
    rest = [(m, c) for m, c in b.items() if m != lb]
    a = dict(a)
    q: IntPoly = {}
    while a:
        la = max(a)
        ca = a.pop(la)
        qm = tuple(x - y for x, y in zip(la, lb))
        if min(qm) < 0:
            raise ArithmeticError("inexact polynomial division")
        qc, r = divmod(ca, cb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[qm] = qc
        for m, c in rest:
            mm = tuple(x + y for x, y in zip(m, qm))
            v = a.get(mm, 0) - qc * c
            if v:
                a[mm] = v
            else:
                a.pop(mm, None)
    return q


def _prem(a: IntPoly, b: IntPoly, i: int) -> IntPoly:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` in variable ``i``."""
    db = _deg(b, i)
    lcb = _coeffs(b, i)[db]
    r = a
    steps = _deg(a, i) - db + 1
    while r and steps > 0:
        dr = _deg(r, i)
        if dr < db:
            break
        lcr = _coeffs(r, i)[dr]
        mono = [0] * len(next(iter(r)))
        mono[i] = dr - db
        r = _sub(_mul(lcb, r), _mul(_shift(lcr, mono), b))
        steps -= 1
    if r and steps > 0:
        r = _mul(r, _pow(lcb, steps))
    return r


def _pow(a: IntPoly, k: int) -> IntPoly:
    out = {(0,) * len(next(iter(a))): mpz(1)}
    for _ in range(k):
        out = _mul(out, a)
    return out


def _content_in(a: IntPoly, i: int) -> IntPoly:
    """GCD of the coefficients of ``a`` viewed as a polynomial in variable ``i``."""
    coeffs = sorted(_coeffs(a, i).values(), key=len)
    g = coeffs[0]
    for k, c in enumerate(coeffs[1:], 1):
        if _is_const(g):
            # only the integer content of the remaining coefficients matters
            (m, v), = g.items()
            v = abs(v)
            for rest in coeffs[k:]:
                if v == 1:
                    break
                v = igcd(v, _icontent(rest))
            return {m: mpz(v)}
        g = _gcd(g, c)
    return g


def _gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """GCD of two nonzero integer polynomials, normalized to a positive
    lex-leading coefficient."""
    n = len(next(iter(f)))
    one = {(0,) * n: mpz(1)}
    mf, mg = _min_mono(f), _min_mono(g)
    mono = tuple(min(x, y) for x, y in zip(mf, mg))
    f = _shift(f, mf, -1)
    g = _shift(g, mg, -1)
    cf, cg = _icontent(f), _icontent(g)
    c = igcd(cf, cg)
    if cf != 1:
        f = {m: v // cf for m, v in f.items()}
    if cg != 1:
        g = {m: v // cg for m, v in g.items()}
    h = _gcd_primitive(f, g, one)
    if c != 1:
        h = _scale(h, c)
    return _shift(_normal_sign(h), mono)


def _gcd_primitive(f: IntPoly, g: IntPoly, one: IntPoly) -> IntPoly:
    if _is_const(f) or _is_const(g):
        return one
    if f == g:
        return f
    vf, vg = _vars(f), _vars(g)
    if vf != vg:
        if vf - vg:
            i = min(vf - vg)
            a, b = f, g
        else:
            i = min(vg - vf)
            a, b = g, f
        res = b
        for coeff in sorted(_coeffs(a, i).values(), key=len):
            res = _gcd(coeff, res)
            if _is_const(res):
                return one
        return res
    x = min(vf, key=lambda i: (max(_deg(f, i), _deg(g, i)), i))
    cont_f = _content_in(f, x)
    cont_g = _content_in(g, x)
    if not _is_const(cont_f):
        f = _divexact(f, cont_f)
    if not _is_const(cont_g):
        g = _divexact(g, cont_g)
    c = one if (_is_const(cont_f) or _is_const(cont_g)) else _gcd(cont_f, cont_g)
    if _deg(f, x) < _deg(g, x):
        f, g = g, f
    # subresultant remainder sequence: exact divisions keep coefficients small
    lead, h = one, one
    while True:
        delta = _deg(f, x) - _deg(g, x)
        r = _prem(f, g, x)
        if not r:
            break
        if _deg(r, x) == 0:
            g = one
            break
        f, g = g, _divexact(r, _mul(lead, _pow(h, delta)))
        lead = _coeffs(f, x)[_deg(f, x)]
        if delta == 1:
            h = lead
        elif delta > 1:
            h = _divexact(_pow(lead, delta), _pow(h, delta - 1))
    if not _is_const(g):
        cg2 = _content_in(g, x)
        if not _is_const(cg2):
            g = _divexact(g, cg2)
        ic = _icontent(g)
        if ic != 1:
            g = {m: v // ic for m, v in g.items()}
    g = _normal_sign(g)
    if _is_const(c):
        return g
    return _normal_sign(_mul(g, c))


# ---------------------------------------------------------------------------
# public polynomial helpers

def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """GCD over QQ, normalized to be integral, primitive, with positive
    lex-leading coefficient (the zero polynomial for gcd(0, 0))."""
    if a.ring is not b.ring:
        raise ContextError("gcd of polynomials from different contexts")
    if a.ring.domain is not QQ:
        raise ContextError("multivariate gcd requires rational coefficients")
    if not a:
        return _from_int(a.ring, _to_int(b)[0]) if b else b
    if not b:
        return _from_int(a.ring, _to_int(a)[0])
    return _from_int(a.ring, _gcd(_to_int(a)[0], _to_int(b)[0]))


def poly_divexact(a: MPoly, b: MPoly) -> MPoly:
    """Exact quotient ``a/b`` over QQ; raises ``ArithmeticError`` otherwise."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return a
    ai, sa = _to_int(a)
    bi, sb = _to_int(b)
    return _from_int(a.ring, _divexact(ai, bi), sa / sb)


def poly_divmod(a: MPoly, b: MPoly, order=GREVLEX) -> Tuple[MPoly, MPoly]:
    """Multivariate division of ``a`` by a single ``b`` (any field domain)."""
    lb, cb = b.leading_term(order)
    key = order.key(a.ring)
    q: dict = {}
    r: dict = {}
    p = dict(a.terms)
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        if all(x >= y for x, y in zip(m, lb)):
            qm = tuple(x - y for x, y in zip(m, lb))
            qc = c / cb
            q[qm] = q.get(qm, 0) + qc
            for mm, cc in b.terms.items():
                if mm == lb:
                    continue
                t = tuple(x + y for x, y in zip(mm, qm))
                v = p.get(t)
                v = -qc * cc if v is None else v - qc * cc
                if v:
                    p[t] = v
                else:
                    p.pop(t, None)
        else:
            r[m] = c
    return MPoly(a.ring, q), MPoly(a.ring, r)


def squarefree_poly(h: MPoly) -> MPoly:
    """Multivariate squarefree part (characteristic zero): ``h`` divided by
    the gcd of ``h`` with all its partial derivatives."""
    if h.is_constant():
        return h.ring.one
    g = h
    for n in h.ring.names:
        d = h.diff(n)
        if d:
            g = poly_gcd(g, d)
            if g.is_constant():
                break
    if g.is_constant():
        return h
    return poly_divexact(h, g)


# ---------------------------------------------------------------------------
# rational functions

def _lc_grevlex(p: MPoly):
    key = GREVLEX.key(p.ring)
    return p.terms[max(p.terms, key=key)]


class RatFunc:
    """A reduced fraction of two rational-coefficient polynomials.

    The numerator and denominator are coprime and the denominator's grevlex
    leading coefficient is 1, so equal values have equal representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly | None = None, normalized: bool = False):
        if den is None:
            den = num.ring.one
            normalized = True
        if num.ring is not den.ring:
            raise ContextError("numerator and denominator in different contexts")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def field(self) -> "FractionField":
        return FractionField(self.num.ring)

    # -- protocol ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MPoly):
            return self.den.is_constant() and self.num == other
        try:
            return self.den.is_constant() and self.num.is_constant() and self.num.constant_coeff() == other
        except TypeError:
            return False

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.num.constant_coeff())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        from .render import render_ratfunc

        return render_ratfunc(self)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_coeff()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.num.ring is not self.num.ring:
                raise ContextError("rational functions from different contexts")
            return other
        if isinstance(other, MPoly):
            return RatFunc(self.num.ring.convert(other))
        return RatFunc(self.num.ring.const(other))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __add__(self, other):
        if isinstance(other, MPoly) and other.ring is not self.num.ring:
            return NotImplemented
        if not isinstance(other, RatFunc) and not isinstance(other, MPoly):
            if not other:
                return self
            return RatFunc(self.num + self.den * other, self.den, normalized=True)
        other = self._coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a:
            return other
        if not c:
            return self
        if b.is_constant() and d.is_constant():
            return RatFunc(a + c, b, normalized=True)
        if b == d:
            t = a + c
            if not t:
                return RatFunc(t)
            return _reduce_by(t, b, b)
        if d.is_constant():
            return RatFunc(a + c * b, b, normalized=True)
        if b.is_constant():
            return RatFunc(a * d + c, d, normalized=True)
        g = poly_gcd(b, d)
        if g.is_constant():
            return RatFunc(a * d + c * b, b * d, normalized=False)._fix_lc()
        b1 = poly_divexact(b, g)
        d1 = poly_divexact(d, g)
        t = a * d1 + c * b1
        if not t:
            return RatFunc(t)
        return _reduce_by(t, b1 * d, g)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MPoly) and other.ring is not self.num.ring:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MPoly) and other.ring is not self.num.ring:
            return NotImplemented
        if not isinstance(other, RatFunc) and not isinstance(other, MPoly):
            c = mpq(other)
            if not c:
                return RatFunc(self.num.ring.zero)
            return RatFunc(self.num * c, self.den, normalized=True)
        other = self._coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return RatFunc(a.ring.zero)
        if b.is_constant() and d.is_constant():
            return RatFunc(a * c, b, normalized=True)
        if not d.is_constant() and not a.is_constant():
            g1 = poly_gcd(a, d)
            if not g1.is_constant():
                a = poly_divexact(a, g1)
                d = poly_divexact(d, g1)
        if not b.is_constant() and not c.is_constant():
            g2 = poly_gcd(c, b)
            if not g2.is_constant():
                c = poly_divexact(c, g2)
                b = poly_divexact(b, g2)
        return RatFunc(a * c, b * d, normalized=True)._fix_lc()

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num, normalized=True)._fix_lc()

    def __truediv__(self, other):
        if isinstance(other, MPoly) and other.ring is not self.num.ring:
            return NotImplemented
        if not isinstance(other, RatFunc) and not isinstance(other, MPoly):
            c = mpq(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.num / c, self.den, normalized=True)
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, normalized=True)._fix_lc()

    def _fix_lc(self) -> "RatFunc":
        lc = _lc_grevlex(self.den)
        if lc != 1:
            inv = 1 / lc
            self.num = self.num * inv
            self.den = self.den * inv
        return self

    # -- evaluation -------------------------------------------------------
    def evaluate(self, point: Mapping[str, object]):
        """Value at a full point; raises ``ZeroDivisionError`` on a pole."""
        d = self.den.evaluate(point)
        if not d.is_constant():
            raise ContextError("evaluation point does not bind every variable")
        dv = d.constant_coeff()
        if not dv:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point).constant_coeff() / dv

    def partial_evaluate(self, point: Mapping[str, object]) -> "RatFunc":
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return RatFunc(self.num.evaluate(point), d)

    def diff(self, var) -> "RatFunc":
        a, b = self.num, self.den
        return RatFunc(a.diff(var) * b - a * b.diff(var), b * b)

    def to_ring(self, ring: PolyRing, rename=None) -> "RatFunc":
        return RatFunc(self.num.to_ring(ring, rename), self.den.to_ring(ring, rename))

    def numerator_lc(self):
        return _lc_grevlex(self.num)


def _reduce_by(t: MPoly, den: MPoly, g: MPoly) -> RatFunc:
    h = poly_gcd(t, g)
    if not h.is_constant():
        t = poly_divexact(t, h)
        den = poly_divexact(den, h)
    return RatFunc(t, den, normalized=True)._fix_lc()


def _normalize(num: MPoly, den: MPoly) -> Tuple[MPoly, MPoly]:
    if num.ring.domain is not QQ:
        raise ContextError("rational functions need rational-coefficient polynomials")
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return num, num.ring.one
    if den.is_constant():
        return num / den.constant_coeff(), num.ring.one
    ni, ns = _to_int(num)
    di, ds = _to_int(den)
    if not _is_const(ni):
        g = _gcd(ni, di)
        if not _is_const(g):
            ni = _divexact(ni, g)
            di = _divexact(di, g)
    ring = num.ring
    d = _from_int(ring, di)
    lc = _lc_grevlex(d)
    return _from_int(ring, ni, ns / ds / lc), d / lc


def ratfunc_normalize(num: MPoly, den: MPoly) -> RatFunc:
    """Canonical coprime form of ``num/den`` with unit-leading denominator."""
    return RatFunc(num, den)


class FractionField:
    """Coefficient domain ``QQ(params)``, interned per parameter ring."""

    _cache: Dict[PolyRing, "FractionField"] = {}

    def __new__(cls, ring: PolyRing):
        f = cls._cache.get(ring)
        if f is None:
            if ring.domain is not QQ:
                raise ContextError("fraction fields are built over rational polynomial rings")
            f = super().__new__(cls)
            f.ring = ring
            f.zero = RatFunc(ring.zero)
            f.one = RatFunc(ring.one)
            cls._cache[ring] = f
        return f

    def __reduce__(self):
        return (FractionField, (self.ring,))

    @property
    def name(self):
        return f"QQ({','.join(self.ring.names)})"

    def __repr__(self):
        return self.name

    def convert(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.num.ring is not self.ring:
                raise ContextError(f"coefficient from {x.num.ring} used in {self.name}")
            return x
        if isinstance(x, MPoly):
            return RatFunc(self.ring.convert(x))
        return RatFunc(self.ring.const(x))

    def is_constant(self, c: RatFunc) -> bool:
        return c.is_constant()


def substitute(p, bindings: Mapping[str, object], target: PolyRing | None = None) -> RatFunc:
    """Substitute rational functions for variables of a polynomial or
    rational function; unbound variables pass through unchanged.

    Images must be RatFunc/MPoly over ``target`` (default: ``p``'s ring) or
    rational numbers.  Raises ``ZeroDivisionError`` when the result has a
    zero denominator.
    """
    if isinstance(p, RatFunc):
        num = substitute(p.num, bindings, target)
        den = substitute(p.den, bindings, target)
        if not den:
            raise ZeroDivisionError("substitution makes the denominator vanish")
        return num / den
    ring = p.ring
    target = target or ring
    images = []
    for n in ring.names:
        if n in bindings:
            v = bindings[n]
            if isinstance(v, RatFunc):
                if v.ring is not target:
                    raise ContextError(f"image of {n} lives in {v.ring}, expected {target}")
                images.append(v)
            elif isinstance(v, MPoly):
                images.append(RatFunc(target.convert(v)))
            else:
                images.append(RatFunc(target.const(v)))
        else:
            if n not in target.index:
                raise ContextError(f"unbound variable {n!r} missing from {target}")
            images.append(RatFunc(target.gen(n)))
    # Clear denominators: accumulate the numerator over a common denominator
    # built from per-variable powers.
    maxdeg = [0] * ring.nvars
    for m in p.terms:
        for i, e in enumerate(m):
            if e > maxdeg[i]:
                maxdeg[i] = e
    num_pows = []
    for i, img in enumerate(images):
        pw = [target.one]
        for _ in range(maxdeg[i]):
            pw.append(pw[-1] * img.num)
        num_pows.append(pw)
    den_pows = []
    for i, img in enumerate(images):
        pw = [target.one]
        for _ in range(maxdeg[i]):
            pw.append(pw[-1] * img.den)
        den_pows.append(pw)
    total = target.zero
    for m, c in p.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if maxdeg[i]:
                term = term * num_pows[i][e]
                if e < maxdeg[i]:
                    term = term * den_pows[i][maxdeg[i] - e]
        total = total + term
    common = target.one
    for i in range(ring.nvars):
        if maxdeg[i]:
            common = common * den_pows[i][maxdeg[i]]
    return RatFunc(total, common)
