"""Exact integer Laurent polynomials and the ring Z[zeta_12].

A :class:`LaurentPoly` is a sparse map ``exponent -> coefficient`` tagged with
the name of its formal variable.  Brackets live in ``a``, Jones polynomials in
``q`` (with ``t = q**2``), so links with an even number of components never
need half-integer exponents.

:class:`Cyclo12` is the ring generated by a primitive 12th root of unity
``zeta = exp(i*pi/6)``, stored in the basis ``1, zeta, zeta^2, zeta^3`` modulo
``zeta^4 = zeta^2 - 1``.  Evaluating a ``q``-polynomial at ``q = zeta^3`` gives
``V(-1)``; at ``q = zeta`` it gives ``V(exp(i*pi/3))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "Cyclo12",
    "ZETA",
    "ZETA3",
    "delta",
    "eval_cyclo",
    "cyclo_norm_squared",
    "divmod_monic",
    "divisible_by_a12_minus_1",
    "parse_poly",
]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "tag", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), tag: str = "a"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items(), reverse=True) if c != 0}
        self.tag = tag
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0, tag: str = "a") -> LaurentPoly:
        return cls({exp: coeff}, tag)

    @classmethod
    def const(cls, c: int, tag: str = "a") -> LaurentPoly:
        return cls({0: c}, tag)

    @classmethod
    def zero(cls, tag: str = "a") -> LaurentPoly:
        return cls({}, tag)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the ``{exponent: coefficient}`` map, exponent-descending."""
        return dict(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return next(iter(self._terms))

    def min_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no valuation")
        return next(reversed(self._terms))

    def span(self) -> int:
        """Highest minus lowest exponent; undefined for the zero polynomial."""
        if not self._terms:
            raise ZeroPolynomialError("span of the zero polynomial is undefined")
        return self.max_exp() - self.min_exp()

    def leading(self) -> tuple[int, int]:
        e = self.max_exp()
        return e, self._terms[e]

    def trailing(self) -> tuple[int, int]:
        e = self.min_exp()
        return e, self._terms[e]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.tag != self.tag and other._terms and self._terms:
                raise ValueError(f"variable mismatch: {self.tag!r} vs {other.tag!r}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.tag)
        return NotImplemented

    def _result_tag(self, other: LaurentPoly) -> str:
        # the zero polynomial adopts the tag of the other operand
        return self.tag if self._terms or not other._terms else other.tag

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc, self._result_tag(other))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.tag)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc, self._result_tag(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly({e * n: c ** (-n)}, self.tag)
        result = LaurentPoly.const(1, self.tag)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``x**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.tag)

    def substitute(self, k: int | Fraction, tag: str | None = None) -> LaurentPoly:
        """Map each ``c*x^e`` to ``c*y^(e*k)``.

        ``k = -1`` mirrors, ``k = Fraction(-1, 2)`` converts ``a`` to ``q``
        (``q = a^-2``), ``k = Fraction(1, 2)`` converts ``q`` to ``t``.
        A non-integral image exponent raises :class:`ExponentError`.
        """
        k = Fraction(k)
        if k == 0:
            raise ValueError("substitution factor must be nonzero")
        out = {}
        for e, c in self._terms.items():
            ne = e * k
            if ne.denominator != 1:
                raise ExponentError(
                    f"exponent {e} of {self.tag!r} is not divisible by {k.denominator}"
                )
            out[int(ne)] = c
        return LaurentPoly(out, self.tag if tag is None else tag)

    def mirror(self) -> LaurentPoly:
        return self.substitute(-1)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.tag)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.tag == other.tag and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.tag if self._terms else "", tuple(self._terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------------

    def term_list(self) -> list[str]:
        """Terms as ``coeff*x^exp`` strings, exponent-descending."""
        return [f"{c}*{self.tag}^{e}" for e, c in self._terms.items()]

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            body = f"{abs(c)}*{self.tag}^{e}"
            if i == 0:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = self.tag if e == 1 else f"{self.tag}^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r}, tag={self.tag!r})"


class ZeroPolynomialError(ValueError):
    pass


class ExponentError(ValueError):
    pass


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(?:([A-Za-z])\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?)?"
)


def parse_poly(text: str, tag: str | None = None) -> LaurentPoly:
    """Parse ``"-1*q^8 + 1*q^6 + q^2 - 3"`` style text (inverse of ``to_text``)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero(tag or "a")
    pos = 0
    terms: dict[int, int] = {}
    seen_tag = tag
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {s[pos:]!r}")
        sign, num, _star, var, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator at position {pos}: {s[pos:]!r}")
        if num is None and var is None:
            raise ValueError(f"empty term at position {pos}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        if var is None:
            e = 0
        else:
            if seen_tag is None:
                seen_tag = var
            elif var != seen_tag:
                raise ValueError(f"variable {var!r} at position {pos} does not match {seen_tag!r}")
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms, seen_tag or "a")


def delta(tag: str = "a") -> LaurentPoly:
    """The loop value ``-a^2 - a^-2``."""
    return LaurentPoly({2: -1, -2: -1}, tag)


# ---------------------------------------------------------------------------
# Division by monic polynomials


def divmod_monic(p: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Long division of an ordinary polynomial by a monic one.

    Both arguments must have only non-negative exponents.
    """
    if d.is_zero() or d.leading()[1] != 1:
        raise ValueError("divisor must be monic")
    if not p.is_zero() and p.min_exp() < 0 or d.min_exp() < 0:
        raise ValueError("divmod_monic expects ordinary polynomials")
    rem = p.terms
    ddeg = d.max_exp()
    dterms = d.terms
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < ddeg:
            break
        c = rem[top]
        shift = top - ddeg
        quot[shift] = c
        for e, dc in dterms.items():
            ne = e + shift
            v = rem.get(ne, 0) - c * dc
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return LaurentPoly(quot, p.tag), LaurentPoly(rem, p.tag)


def divisible_by_a12_minus_1(p: LaurentPoly) -> bool:
    """True iff ``p = h * (a^12 - 1)`` for a Laurent polynomial ``h``."""
    if p.is_zero():
        return True
    shifted = p.shift(-p.min_exp())
    _, rem = divmod_monic(shifted, LaurentPoly({12: 1, 0: -1}, p.tag))
    return rem.is_zero()


# ---------------------------------------------------------------------------
# Z[zeta_12]


@dataclass(frozen=True)
class Cyclo12:
    """Element ``c0 + c1*z + c2*z^2 + c3*z^3`` with ``z^4 = z^2 - 1``."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __add__(self, other: Cyclo12) -> Cyclo12:
        return Cyclo12(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: Cyclo12) -> Cyclo12:
        return Cyclo12(*(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> Cyclo12:
        return Cyclo12(*(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo12(*(other * x for x in self.coords))
        prod = [0] * 7
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(other.coords):
                    prod[i + j] += x * y
        # z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
        for k in (6, 5, 4):
            c = prod[k]
            if c:
                prod[k] = 0
                prod[k - 2] += c
                prod[k - 4] -= c
        return Cyclo12(*prod[:4])

    __rmul__ = __mul__

    def conjugate(self) -> Cyclo12:
        """Image under ``z -> z^-1``."""
        out = Cyclo12()
        for k, x in enumerate(self.coords):
            if x:
                out = out + _ZPOW[(-k) % 12] * x
        return out

    def is_rational_integer(self) -> bool:
        return self.c1 == self.c2 == self.c3 == 0

    def to_complex(self) -> complex:
        """Floating-point value; for display only."""
        import cmath

        z = cmath.exp(1j * cmath.pi / 6)
        return sum(c * z**k for k, c in enumerate(self.coords))


def _zeta_powers() -> list[Cyclo12]:
    z = Cyclo12(0, 1, 0, 0)
    out = [Cyclo12(1, 0, 0, 0)]
    for _ in range(11):
        out.append(out[-1] * z)
    return out


_ZPOW = _zeta_powers()
ZETA = _ZPOW[1]
ZETA3 = _ZPOW[3]


def eval_cyclo(p: LaurentPoly, point: int) -> Cyclo12:
    """Evaluate a polynomial at ``zeta**point`` (``point`` 1 or 3 in practice)."""
    acc = [0, 0, 0, 0]
    for e, c in p:
        zp = _ZPOW[(e * point) % 12]
        for i, x in enumerate(zp.coords):
            acc[i] += c * x
    return Cyclo12(*acc)


def cyclo_norm_squared(z: Cyclo12) -> tuple[int, int]:
    """``z * conj(z)`` written as ``u + v*sqrt(3)``.

    The real subring of Z[zeta_12] is Z[sqrt 3] with ``sqrt 3 = 2 z - z^3``.
    """
    n = z * z.conjugate()
    c0, c1, c2, c3 = n.coords
    if c2 != 0 or c1 != -2 * c3:
        raise ArithmeticError(f"norm {n} is not real")
    return c0, -c3
