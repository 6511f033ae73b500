"""Expression parser and problem-file loader.

Grammar (whitespace insignificant)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' INT)?
    atom  := INT | IDENT | '(' expr ')'

Division by a non-constant is only accepted where a rational function is
expected (rewrite targets and invariantization inputs).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import tomli
from gmpy2 import mpq

from .action import GroupAction, GroupSpec, capitalized
from .errors import ParseError
from .groebner import Ideal
from .poly import MPoly, PolyRing
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")
IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
RESERVED = ("zeta",)


def _tokenize(text: str, line: int, col: int):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col + bad)
        num, ident, op = m.groups()
        start = m.end() - len(num or ident or op)
        if num:
            toks.append(("int", num, start))
        elif ident:
            toks.append(("ident", ident, start))
        else:
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class ExpressionParser:
    """Recursive-descent parser evaluating into a polynomial ring."""

    def __init__(self, ring: PolyRing, allow_division: bool = False):
        self.ring = ring
        self.allow_division = allow_division

    def parse(self, text: str, line: int = 1, col: int = 1):
        self.toks = _tokenize(text, line, col)
        self.i = 0
        self.line, self.col = line, col
        if self.toks[0][0] == "end":
            raise ParseError("empty expression", line, col)
        value = self.expr()
        kind, tok, pos = self.toks[self.i]
        if kind != "end":
            self.fail(f"unexpected {tok!r}", pos)
        return value

    def fail(self, msg, pos):
        raise ParseError(msg, self.line, self.col + pos)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            _, op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                value = self.divide(value, rhs, pos)
        return value

    def divide(self, a, b, pos):
        if isinstance(b, RatFunc) and b.is_constant():
            b = b.constant_value()
        elif isinstance(b, MPoly) and b.is_constant():
            b = b.constant_coeff()
        if not isinstance(b, (MPoly, RatFunc)):
            if not b:
                self.fail("division by zero", pos)
            return a / b
        if not self.allow_division:
            self.fail("non-constant division", pos)
        if not b:
            self.fail("division by zero", pos)
        return a / b

    def lift(self, p):
        return RatFunc(p) if self.allow_division else p

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, tok, pos = self.take()
            if kind != "int":
                self.fail("exponent must be a nonnegative integer", pos)
            base = base ** int(tok)
        return base

    def atom(self):
        kind, tok, pos = self.take()
        if kind == "int":
            return self.lift(self.ring.const(mpq(int(tok))))
        if kind == "ident":
            if tok not in self.ring.index:
                self.fail(f"unknown identifier {tok!r}", pos)
            return self.lift(self.ring.gen(tok))
        if (kind, tok) == ("op", "("):
            value = self.expr()
            kind2, tok2, pos2 = self.take()
            if (kind2, tok2) != ("op", ")"):
                self.fail("expected ')'", pos2)
            return value
        self.fail("unexpected end of expression" if kind == "end" else f"unexpected {tok!r}", pos)


def parse_poly(text: str, ring: PolyRing, line: int = 1, col: int = 1) -> MPoly:
    return ExpressionParser(ring).parse(text, line, col)


def parse_ratfunc(text: str, ring: PolyRing, line: int = 1, col: int = 1) -> RatFunc:
    value = ExpressionParser(ring, allow_division=True).parse(text, line, col)
    return value if isinstance(value, RatFunc) else RatFunc(value)


def parse_rational(text: str, line: int = 1, col: int = 1):
    empty = PolyRing(())
    value = parse_poly(str(text), empty, line, col)
    return value.constant_coeff()


# ---------------------------------------------------------------------------
# problem files

@dataclass
class ProblemFile:
    action: GroupAction
    section: Optional[Ideal]
    settings: Dict[str, object]
    text: str = ""
    warnings: List[str] = field(default_factory=list)

    @property
    def group(self) -> GroupSpec:
        return self.action.group


class _Locator:
    """Maps expression strings back to positions in the source text."""

    def __init__(self, text: str):
        self.text = text
        self.cursor = 0

    def find(self, expr: str) -> Tuple[int, int]:
        idx = self.text.find(expr, self.cursor)
        if idx < 0:
            idx = self.text.find(expr)
        if idx < 0:
            return 1, 1
        self.cursor = idx + len(expr)
        line = self.text.count("\n", 0, idx) + 1
        col = idx - (self.text.rfind("\n", 0, idx) + 1) + 1
        return line, col


KEYS = {
    "group": ("params", "relations", "neutral", "product_left", "product", "inverse"),
    "action": ("vars", "numerators", "denominator"),
    "cross_section": ("relations",),
    "settings": ("order", "ranking", "seed", "retries"),
}


def _section(data, name, required=True):
    sec = data.get(name)
    if sec is None:
        if required:
            raise ParseError(f"missing section [{name}]")
        return None
    if not isinstance(sec, dict):
        raise ParseError(f"[{name}] must be a table")
    unknown = sorted(set(sec) - set(KEYS[name]))
    if unknown:
        raise ParseError(f"unknown key {unknown[0]!r} in [{name}]")
    return sec


def _names(sec, key, where) -> Tuple[str, ...]:
    vals = sec.get(key)
    if not isinstance(vals, list) or not all(isinstance(v, str) for v in vals):
        raise ParseError(f"[{where}] {key} must be a list of names")
    for v in vals:
        if not IDENT.match(v):
            raise ParseError(f"invalid identifier {v!r} in [{where}] {key}")
        if v in RESERVED:
            raise ParseError(f"{v!r} is reserved")
    if len(set(vals)) != len(vals):
        raise ParseError(f"duplicate names in [{where}] {key}")
    return tuple(vals)


def _exprs(sec, key, where, required=True) -> List[str]:
    vals = sec.get(key)
    if vals is None and not required:
        return []
    if isinstance(vals, str):
        vals = [vals]
    if not isinstance(vals, list) or not all(isinstance(v, (str, int)) for v in vals):
        raise ParseError(f"[{where}] {key} must be a list of quoted expressions")
    return [str(v) for v in vals]


def parse_problem(text) -> ProblemFile:
    """Parse a problem file (TOML) into a validated action and optional section."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"file is not UTF-8: {exc}") from None
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = re.search(r"line (\d+), column (\d+)", str(exc))
        msg = str(exc).split(" (at")[0]
        if m:
            raise ParseError(msg, int(m.group(1)), int(m.group(2))) from None
        raise ParseError(msg) from None
    extra = sorted(set(data) - set(KEYS))
    if extra:
        raise ParseError(f"unknown section [{extra[0]}]")
    loc = _Locator(text)

    def parse_in(ring, expr):
        line, col = loc.find(expr)
        return parse_poly(expr, ring, line, col)

    grp = _section(data, "group")
    params = _names(grp, "params", "group")
    gring = PolyRing(params)
    relations = [parse_in(gring, e) for e in _exprs(grp, "relations", "group", required=False)]
    neutral_src = grp.get("neutral")
    if not isinstance(neutral_src, list):
        raise ParseError("[group] neutral must be a list")
    if len(neutral_src) != len(params):
        raise ParseError(f"[group] neutral has {len(neutral_src)} entries for {len(params)} parameters")
    neutral = []
    for v in neutral_src:
        line, col = loc.find(str(v))
        neutral.append(parse_rational(str(v), line, col))

    product = inverse = left = None
    if "product" in grp:
        left = _names(grp, "product_left", "group") if "product_left" in grp else None
        if left is None:
            raise ParseError("[group] product needs product_left names")
        if set(left) & set(params):
            raise ParseError("product_left names must differ from params")
        pring = PolyRing(left + params)
        product = [parse_in(pring, e) for e in _exprs(grp, "product", "group")]
        if len(product) != len(params):
            raise ParseError(f"[group] product has {len(product)} entries for {len(params)} parameters")
    if "inverse" in grp:
        inverse = [parse_in(gring, e) for e in _exprs(grp, "inverse", "group")]
        if len(inverse) != len(params):
            raise ParseError(f"[group] inverse has {len(inverse)} entries for {len(params)} parameters")
    group = GroupSpec(params, relations, tuple(neutral), product, left, inverse)

    act = _section(data, "action")
    zvars = _names(act, "vars", "action")
    if set(zvars) & set(params):
        raise ParseError("action variables must differ from group parameters")
    targets = tuple(capitalized(v) for v in zvars)
    clash = set(targets) & (set(zvars) | set(params))
    if clash or len(set(targets)) != len(targets):
        raise ParseError(f"capitalized coordinate names collide: {sorted(clash) or list(targets)}")
    aring = PolyRing(params + zvars)
    nums_src = _exprs(act, "numerators", "action")
    if len(nums_src) != len(zvars):
        raise ParseError(f"[action] has {len(nums_src)} numerators for {len(zvars)} variables")
    numerators = [parse_in(aring, e) for e in nums_src]
    den_src = act.get("denominator", "1")
    denominator = parse_in(aring, str(den_src))
    if not denominator:
        raise ParseError("[action] denominator is zero")
    action = GroupAction(group, zvars, numerators, denominator)

    section = None
    cs = _section(data, "cross_section", required=False)
    if cs is not None:
        sring = PolyRing(targets)
        section = Ideal([parse_in(sring, e) for e in _exprs(cs, "relations", "cross_section", required=False)],
                        sring)

    settings = {"order": "grevlex", "ranking": None, "seed": 0, "retries": 10}
    st = _section(data, "settings", required=False) or {}
    settings.update(st)
    if settings["order"] not in ("lex", "grevlex"):
        raise ParseError(f"unknown order {settings['order']!r}")
    if settings["ranking"] is not None:
        rk = settings["ranking"]
        if not isinstance(rk, list) or sorted(rk) != sorted(targets):
            raise ParseError(f"ranking must list exactly {list(targets)}")
        settings["ranking"] = tuple(rk)
    for key in ("seed", "retries"):
        if not isinstance(settings[key], int) or settings[key] < 0:
            raise ParseError(f"{key} must be a nonnegative integer")
    return ProblemFile(action, section, settings, text)


def load_problem(path) -> ProblemFile:
    with open(path, "rb") as fh:
        return parse_problem(fh.read())
