"""Canonical text rendering.

Output is spaceless, uses ``*`` and ``^``, writes rationals as ``a/b`` and
parses back to the same value.  Terms appear in decreasing order under the
order passed in (grevlex on the ring's declared variables by default).
"""
from __future__ import annotations

from gmpy2 import gcd, lcm, mpz

from .orders import GREVLEX


def _mono_str(names, m) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def _is_ratfunc(c) -> bool:
    return hasattr(c, "num") and hasattr(c, "den") and hasattr(c, "numerator_lc")


def _negative(c) -> bool:
    if _is_ratfunc(c):
        return bool(c) and c.numerator_lc() < 0
    return c < 0


def _coeff_str(c, has_mono: bool) -> str:
    """Render a nonnegative-looking coefficient; '' means an implicit 1."""
    if _is_ratfunc(c):
        if c.is_constant():
            c = c.constant_value()
        else:
            s = render_ratfunc(c)
            if c.den.is_constant():
                if len(c.num) == 1:
                    return s + "*" if has_mono else s
                return f"({s})*" if has_mono else f"({s})"
            return f"({s})*" if has_mono else s
    if has_mono:
        return "" if c == 1 else f"{c}*"
    return str(c)


def render_poly(p, order=None) -> str:
    if not p.terms:
        return "0"
    order = order or GREVLEX
    names = p.ring.names
    out = []
    for m, c in p.sorted_terms(order):
        neg = _negative(c)
        if neg:
            c = -c
        ms = _mono_str(names, m)
        body = _coeff_str(c, bool(ms)) + ms
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def _integral(num, den):
    """Scale a fraction so both sides have coprime integer coefficients."""
    coeffs = list(num.terms.values()) + list(den.terms.values())
    scale = mpz(1)
    for c in coeffs:
        scale = lcm(scale, c.denominator)
    g = mpz(0)
    for c in coeffs:
        g = gcd(g, c.numerator * (scale // c.denominator))
    if scale == 1 and g == 1:
        return num, den
    f = scale / g if g else scale
    return num * f, den * f


def render_ratfunc(r) -> str:
    if r.den.is_constant():
        return render_poly(r.num)
    rnum, rden = _integral(r.num, r.den)
    num = render_poly(rnum)
    if len(rnum) > 1:
        num = f"({num})"
    den = render_poly(rden)
    if len(rden) > 1:
        den = f"({den})"
    else:
        (m, c), = rden.terms.items()
        if c != 1 or sum(1 for e in m if e) > 1:
            den = f"({den})"
    return f"{num}/{den}"


def render_value(v, order=None) -> str:
    """Render a polynomial, rational function or number."""
    if _is_ratfunc(v):
        return render_ratfunc(v)
    if hasattr(v, "terms"):
        return render_poly(v, order)
    return str(v)


def render_basis(polys, order) -> list:
    """Render a basis with every element's leading term first."""
    return [render_poly(p, order) for p in polys]
