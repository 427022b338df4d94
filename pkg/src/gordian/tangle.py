"""Two-string tangles and their Kauffman bracket vectors.

A tangle ``T`` expands in the bracket skein module of the disk with four
marked points as ``<T> = f*[0] + g*[inf]``; the pair ``(f, g)`` is the bracket
vector.  Composition trees are evaluated bottom-up with the sum/product
matrices, leaves use the closed-form twist brackets.

Geometry (shared with :mod:`gordian.diagram`): ``[0]`` joins NW-NE and SW-SE,
``[inf]`` joins NW-SW and NE-SE.  ``T + U`` places ``U`` to the right of
``T``; ``T * U`` places ``U`` below ``T``.  The numerator closure caps NW-NE
and SW-SE, the denominator closure caps NW-SW and NE-SE.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from gordian.laurent import LaurentPoly, delta

__all__ = [
    "HorizontalTwist",
    "VerticalTwist",
    "Sum",
    "Product",
    "Mirror",
    "TangleExpr",
    "BracketVector",
    "horizontal",
    "vertical",
    "ZERO",
    "INFINITY",
    "bracket_vector",
    "closure_bracket",
    "pairing",
    "normalize",
    "crossing_count",
    "format_tangle",
    "parse_tangle",
    "TangleSyntaxError",
]

NUMERATOR = "N"
DENOMINATOR = "D"


@dataclass(frozen=True)
class HorizontalTwist:
    """``[n]``: ``n >= 0`` horizontal half-twists; ``[0]`` has no crossings."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("leaf twist counts are non-negative; use horizontal(n)")


@dataclass(frozen=True)
class VerticalTwist:
    """``[1/n]``: ``n >= 0`` vertical half-twists; ``[1/0]`` is ``[inf]``."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("leaf twist counts are non-negative; use vertical(n)")


@dataclass(frozen=True)
class Sum:
    left: "TangleExpr"
    right: "TangleExpr"


@dataclass(frozen=True)
class Product:
    top: "TangleExpr"
    bottom: "TangleExpr"


@dataclass(frozen=True)
class Mirror:
    inner: "TangleExpr"


TangleExpr = Union[HorizontalTwist, VerticalTwist, Sum, Product, Mirror]

ZERO = HorizontalTwist(0)
INFINITY = VerticalTwist(0)


def horizontal(n: int) -> TangleExpr:
    return HorizontalTwist(n) if n >= 0 else Mirror(HorizontalTwist(-n))


def vertical(n: int) -> TangleExpr:
    return VerticalTwist(n) if n >= 0 else Mirror(VerticalTwist(-n))


def crossing_count(t: TangleExpr) -> int:
    if isinstance(t, (HorizontalTwist, VerticalTwist)):
        return t.n
    if isinstance(t, Sum):
        return crossing_count(t.left) + crossing_count(t.right)
    if isinstance(t, Product):
        return crossing_count(t.top) + crossing_count(t.bottom)
    return crossing_count(t.inner)


@dataclass(frozen=True)
class BracketVector:
    f: LaurentPoly
    g: LaurentPoly

    def mirror(self) -> BracketVector:
        return BracketVector(self.f.mirror(), self.g.mirror())


_A = LaurentPoly.monomial(1, 1)
_DELTA = delta()


def _geometric(n: int, step: int) -> LaurentPoly:
    # sum_{k=0}^{n-1} (-a^step)^k
    return LaurentPoly({step * k: (-1) ** k for k in range(n)})


@lru_cache(maxsize=4096)
def bracket_vector(t: TangleExpr) -> BracketVector:
    if isinstance(t, HorizontalTwist):
        if t.n == 0:
            return BracketVector(LaurentPoly.const(1), LaurentPoly.zero())
        return BracketVector(_A ** t.n, _geometric(t.n, -4).shift(t.n - 2))
    if isinstance(t, VerticalTwist):
        if t.n == 0:
            return BracketVector(LaurentPoly.zero(), LaurentPoly.const(1))
        return BracketVector(_geometric(t.n, 4).shift(2 - t.n), _A ** -t.n)
    if isinstance(t, Mirror):
        return bracket_vector(t.inner).mirror()
    if isinstance(t, Sum):
        bt, bu = bracket_vector(t.left), bracket_vector(t.right)
        return BracketVector(bu.f * bt.f, bu.g * bt.f + (bu.f + _DELTA * bu.g) * bt.g)
    if isinstance(t, Product):
        bt, bu = bracket_vector(t.top), bracket_vector(t.bottom)
        return BracketVector((_DELTA * bu.f + bu.g) * bt.f + bu.f * bt.g, bu.g * bt.g)
    raise TypeError(f"not a tangle expression: {t!r}")


def closure_bracket(t: TangleExpr, which: str) -> LaurentPoly:
    """Bracket of the numerator (``"N"``) or denominator (``"D"``) closure."""
    br = bracket_vector(t)
    if which == NUMERATOR:
        return _DELTA * br.f + br.g
    if which == DENOMINATOR:
        return br.f + _DELTA * br.g
    raise ValueError(f"closure must be 'N' or 'D', got {which!r}")


def pairing(t: TangleExpr, u: TangleExpr) -> LaurentPoly:
    """``br(T)^T [[d, 1], [1, d]] br(U)``, the bracket of ``(T + U)^N``."""
    bt, bu = bracket_vector(t), bracket_vector(u)
    return bt.f * (_DELTA * bu.f + bu.g) + bt.g * (bu.f + _DELTA * bu.g)


def normalize(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    """``(-a)^(-3w) * <D>``."""
    sign = -1 if writhe % 2 else 1
    return bracket.shift(-3 * writhe) * sign


# ---------------------------------------------------------------------------
# text grammar:  closed := expr ['^' ('N'|'D')]
#                expr   := term ('+' term)*
#                term   := unary ('*' unary)*
#                unary  := '-' unary | '[' leaf ']' | '(' expr ')'


class TangleSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def format_tangle(t: TangleExpr, closure: str | None = None) -> str:
    body = _fmt(t)
    return f"{body}^{closure}" if closure else body


def _fmt(t: TangleExpr) -> str:
    if isinstance(t, HorizontalTwist):
        return f"[{t.n}]"
    if isinstance(t, VerticalTwist):
        return "[inf]" if t.n == 0 else f"[1/{t.n}]"
    if isinstance(t, Mirror):
        return "-" + _fmt(t.inner)
    if isinstance(t, Sum):
        return f"({_fmt(t.left)} + {_fmt(t.right)})"
    return f"({_fmt(t.top)} * {_fmt(t.bottom)})"


_TOKEN = re.compile(r"\s*(\[[^\]]*\]|\^[ND]|[()+*\-])")
_LEAF = re.compile(r"^\[\s*(?:(-?\d+)|(-?)\s*1\s*/\s*(-?\d+)|inf|∞)\s*\]$")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TangleSyntaxError(f"unexpected character {text[pos]!r}", pos)
        toks.append((m.group(1), m.start(1)))
        pos = m.end()
    return toks


def parse_tangle(text: str) -> tuple[TangleExpr, str | None]:
    """Parse e.g. ``"((-[1/3] + [1/5]) * [1])^D"`` into ``(expr, closure)``."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    def where():
        return toks[i][1] if i < len(toks) else len(text)

    def expr():
        nonlocal i
        node = term()
        while peek() == "+":
            i += 1
            node = Sum(node, term())
        return node

    def term():
        nonlocal i
        node = unary()
        while peek() == "*":
            i += 1
            node = Product(node, unary())
        return node

    def unary():
        nonlocal i
        tok = peek()
        if tok == "-":
            i += 1
            return Mirror(unary())
        if tok == "(":
            i += 1
            node = expr()
            if peek() != ")":
                raise TangleSyntaxError("expected ')'", where())
            i += 1
            return node
        if tok is not None and tok.startswith("["):
            m = _LEAF.match(tok)
            if m is None:
                raise TangleSyntaxError(f"bad twist leaf {tok}", where())
            i += 1
            if m.group(1) is not None:
                return horizontal(int(m.group(1)))
            if m.group(3) is not None:
                n = int(m.group(3))
                if n == 0:
                    raise TangleSyntaxError("use [inf] for the infinity tangle", toks[i - 1][1])
                return vertical(-n if m.group(2) else n)
            return INFINITY
        raise TangleSyntaxError(f"unexpected token {tok!r}", where())

    if not toks:
        raise TangleSyntaxError("empty tangle expression", 0)
    node = expr()
    closure = None
    if peek() in ("^N", "^D"):
        closure = peek()[1]
        i += 1
    if i != len(toks):
        raise TangleSyntaxError(f"trailing token {peek()!r}", where())
    return node, closure
