"""Term orders: lex, grevlex and block (elimination) orders.

An order is declared by variable *names*, so the same order object can be
used on any ring containing those names.  ``order.key(ring)`` returns a
function mapping an exponent tuple to a flat tuple of ints; comparing keys
compares monomials (larger key = larger monomial).
"""
from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple

from .errors import ContextError
from .poly import Monomial, PolyRing

LT, EQ, GT = -1, 0, 1

_KINDS = ("lex", "grevlex")


class TermOrder:
    """A monomial order.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``.  For lex/grevlex an
    optional ``ranking`` lists variables from most to least significant
    (default: the ring's declared order).  A block order is a list of
    ``(names, inner_kind)`` pairs, the first block dominating.
    """

    def __init__(self, kind: str = "grevlex", ranking: Sequence[str] | None = None,
                 blocks: Sequence[Tuple[Sequence[str], str]] | None = None):
        if kind == "block":
            if not blocks:
                raise ValueError("block order needs at least one block")
            clean = []
            seen = set()
            for names, inner in blocks:
                if inner not in _KINDS:
                    raise ValueError(f"unknown inner order {inner!r}")
                names = tuple(names)
                if seen & set(names):
                    raise ValueError("blocks must be disjoint")
                seen |= set(names)
                clean.append((names, inner))
            self.blocks = tuple(clean)
            self.ranking = None
        elif kind in _KINDS:
            self.blocks = None
            self.ranking = tuple(ranking) if ranking is not None else None
        else:
            raise ValueError(f"unknown term order {kind!r}")
        self.kind = kind
        self._keys: Dict[PolyRing, Callable] = {}

    @classmethod
    def lex(cls, ranking=None) -> "TermOrder":
        return cls("lex", ranking)

    @classmethod
    def grevlex(cls, ranking=None) -> "TermOrder":
        return cls("grevlex", ranking)

    @classmethod
    def block(cls, *blocks) -> "TermOrder":
        return cls("block", blocks=blocks)

    # -- identity ---------------------------------------------------------
    def _ident(self):
        return (self.kind, self.ranking, self.blocks)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            inner = "; ".join(f"{k}({','.join(n)})" for n, k in self.blocks)
            return f"block[{inner}]"
        if self.ranking:
            return f"{self.kind}({'>'.join(self.ranking)})"
        return self.kind

    def describe(self) -> str:
        """Short text used in reports."""
        return repr(self)

    # -- keys -----------------------------------------------------------
    def key(self, ring: PolyRing) -> Callable[[Monomial], tuple]:
        fn = self._keys.get(ring)
        if fn is None:
            fn = self._build_key(ring)
            self._keys[ring] = fn
        return fn

    def _positions(self, ring: PolyRing, names) -> list:
        try:
            return [ring.index[n] for n in names]
        except KeyError as exc:
            raise ContextError(f"order mentions {exc.args[0]!r}, absent from {ring.names}") from None

    def _build_key(self, ring: PolyRing) -> Callable[[Monomial], tuple]:
        if self.kind == "block":
            parts = []
            covered = set()
            for names, inner in self.blocks:
                present = [n for n in names if n in ring.index]
                covered.update(present)
                parts.append((inner, self._positions(ring, present)))
            missing = [n for n in ring.names if n not in covered]
            if missing:
                raise ContextError(f"block order does not cover {missing}")
        else:
            names = self.ranking if self.ranking is not None else ring.names
            pos = self._positions(ring, [n for n in names if n in ring.index])
            if len(pos) != ring.nvars:
                missing = [n for n in ring.names if n not in names]
                raise ContextError(f"ranking does not cover {missing}")
            parts = [(self.kind, pos)]

        cache: Dict[Monomial, tuple] = {}

        if len(parts) == 1 and parts[0][0] == "grevlex":
            rev = parts[0][1][::-1]

            def key(m):
                k = cache.get(m)
                if k is None:
                    k = (sum(m),) + tuple(-m[i] for i in rev)
                    cache[m] = k
                return k
            return key

        def key(m):
            k = cache.get(m)
            if k is None:
                out = []
                for inner, pos in parts:
                    if inner == "lex":
                        out.extend(m[i] for i in pos)
                    else:
                        out.append(sum(m[i] for i in pos))
                        out.extend(-m[i] for i in reversed(pos))
                k = tuple(out)
                cache[m] = k
            return k
        return key

    def compare(self, m1: Monomial, m2: Monomial, ring: PolyRing) -> int:
        """Return LT, EQ or GT."""
        if len(m1) != ring.nvars or len(m2) != ring.nvars:
            raise ContextError("monomial arity does not match the context")
        k = self.key(ring)
        a, b = k(tuple(m1)), k(tuple(m2))
        return LT if a < b else GT if a > b else EQ

    # -- derived orders -----------------------------------------------------
    def restrict(self, names: Sequence[str]) -> "TermOrder":
        """The order induced on a subset of variables."""
        keep = set(names)
        if self.kind == "block":
            blocks = [(tuple(n for n in b if n in keep), k) for b, k in self.blocks]
            blocks = [(b, k) for b, k in blocks if b]
            if len(blocks) == 1:
                b, k = blocks[0]
                return TermOrder(k, b)
            return TermOrder("block", blocks=blocks)
        if self.ranking is None:
            return TermOrder(self.kind, [n for n in names])
        return TermOrder(self.kind, [n for n in self.ranking if n in keep])

    def ranked_names(self, ring: PolyRing) -> Tuple[str, ...]:
        """Variables of ``ring`` from most to least significant."""
        if self.kind == "block":
            out = []
            for b, _ in self.blocks:
                out.extend(n for n in b if n in ring.index)
            return tuple(out)
        names = self.ranking if self.ranking is not None else ring.names
        return tuple(n for n in names if n in ring.index)


def elimination_order(eliminate: Sequence[str], keep_order: TermOrder,
                      keep: Sequence[str], inner: str = "grevlex") -> TermOrder:
    """Block order with ``eliminate`` dominating the (ordered) ``keep`` variables."""
    if keep_order.kind == "block":
        blocks = [(tuple(eliminate), inner)] + list(keep_order.blocks)
    else:
        ranking = keep_order.ranking if keep_order.ranking is not None else tuple(keep)
        blocks = [(tuple(eliminate), inner), (tuple(ranking), keep_order.kind)]
    return TermOrder("block", blocks=blocks)


def compare(m1: Monomial, m2: Monomial, order: TermOrder, ring: PolyRing) -> int:
    return order.compare(m1, m2, ring)


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")
