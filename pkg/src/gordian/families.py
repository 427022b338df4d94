"""Symbolic knot and link families and their standard diagrams.

Conventions (checked against determinant and span):

* ``Torus(n)``: ``T(2, n)``.  ``Torus(-n) = [1/n]^D`` and ``Torus(n)`` is its
  mirror, so ``Torus(3)`` is the trefoil with Jones polynomial ``t + t^3 - t^4``.
  ``Torus(0)`` is the two-component unlink.
* ``Twist(m, n) = ([m] + [1/n])^N``: determinant ``m*n + 1``, span ``m + n``.
* ``Pretzel(p, q, r) = ([1/p] + [1/q] + [1/r])^N``.
* ``Kq(q) = ((-[1/3] + [1/q]) * [1])^D`` and ``Kqr(q, r) = (T_q + [r])^N``.

Negative twist parameters mirror the corresponding leaf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from importlib import resources
from pathlib import Path
from typing import Union

from gordian import diagram
from gordian.diagram import PDCode
from gordian.laurent import LaurentPoly, delta
from gordian.tangle import (
    DENOMINATOR,
    INFINITY,
    NUMERATOR,
    ZERO,
    HorizontalTwist,
    Mirror,
    Product,
    Sum,
    TangleExpr,
    VerticalTwist,
    closure_bracket,
    horizontal,
    vertical,
)

__all__ = [
    "Unknot",
    "Unlink",
    "Torus",
    "Twist",
    "Pretzel",
    "Kq",
    "Kqr",
    "ConnectedSum",
    "DisjointUnion",
    "RawPD",
    "FamilySpec",
    "FamilySyntaxError",
    "FIXTURE_NAMES",
    "tq_tangle",
    "to_tangle",
    "bracket",
    "component_count",
    "standard_writhe",
    "synthesize",
    "mirror",
    "is_knot",
    "parse_family",
    "fixture",
    "fixture_path",
    "trefoil_sum",
]


@dataclass(frozen=True)
class Unknot:
    def __str__(self) -> str:
        return "unknot"


@dataclass(frozen=True)
class Unlink:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("Unlink needs at least two components")

    def __str__(self) -> str:
        return f"unlink:{self.k}"


@dataclass(frozen=True)
class Torus:
    n: int

    def __str__(self) -> str:
        return f"torus:{self.n}"


@dataclass(frozen=True)
class Twist:
    m: int
    n: int

    def __str__(self) -> str:
        return f"twist:{self.m},{self.n}"


@dataclass(frozen=True)
class Pretzel:
    p: int
    q: int
    r: int

    def __str__(self) -> str:
        return f"pretzel:{self.p},{self.q},{self.r}"


@dataclass(frozen=True)
class Kq:
    q: int

    def __post_init__(self):
        if self.q < 1 or self.q % 2 == 0:
            raise ValueError(f"Kq needs odd q >= 1, got {self.q}")

    def __str__(self) -> str:
        return f"kq:{self.q}"


@dataclass(frozen=True)
class Kqr:
    q: int
    r: int

    def __post_init__(self):
        if self.q < 1 or self.q % 2 == 0:
            raise ValueError(f"Kqr needs odd q >= 1, got {self.q}")
        if self.r < 3 or self.r % 2 == 0:
            raise ValueError(f"Kqr needs odd r >= 3, got {self.r}")

    def __str__(self) -> str:
        return f"kqr:{self.q},{self.r}"


@dataclass(frozen=True)
class ConnectedSum:
    """Connected sum along the first component of each summand.

    Summands may be links; the band always joins their first components.
    """

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("ConnectedSum needs at least one summand")

    def __str__(self) -> str:
        return "sum(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("DisjointUnion needs at least one part")

    def __str__(self) -> str:
        return "sqcup(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True, eq=False)
class RawPD:
    pd: PDCode
    name: str = "raw"

    # orientation overrides change the writhe, so they take part in equality
    def _key(self):
        return (self.pd, self.pd.orientations, self.name)

    def __eq__(self, other) -> bool:
        return isinstance(other, RawPD) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return f"pd:{self.name}"


FamilySpec = Union[
    Unknot, Unlink, Torus, Twist, Pretzel, Kq, Kqr, ConnectedSum, DisjointUnion, RawPD
]

_ATOMIC = (Unknot, Unlink, Torus, Twist, Pretzel, Kq, Kqr)


def tq_tangle(q: int) -> TangleExpr:
    """``T_q = (-[1/3] + [1/q]) * [1]``."""
    return Product(Sum(Mirror(VerticalTwist(3)), vertical(q)), HorizontalTwist(1))


def to_tangle(f: FamilySpec) -> tuple[TangleExpr, str]:
    if isinstance(f, Unknot):
        return ZERO, DENOMINATOR
    if isinstance(f, Unlink):
        return reduce(Sum, [INFINITY] * f.k), NUMERATOR
    if isinstance(f, Torus):
        if f.n == 0:
            return INFINITY, DENOMINATOR
        return vertical(-f.n), DENOMINATOR
    if isinstance(f, Twist):
        return Sum(horizontal(f.m), vertical(f.n)), NUMERATOR
    if isinstance(f, Pretzel):
        return Sum(Sum(vertical(f.p), vertical(f.q)), vertical(f.r)), NUMERATOR
    if isinstance(f, Kq):
        return tq_tangle(f.q), DENOMINATOR
    if isinstance(f, Kqr):
        return Sum(tq_tangle(f.q), HorizontalTwist(f.r)), NUMERATOR
    raise TypeError(f"{f} has no single tangle form")


@lru_cache(maxsize=8192)
def bracket(f: FamilySpec, bound: int = diagram.DEFAULT_CROSSING_BOUND) -> LaurentPoly:
    """Kauffman bracket of the standard diagram of ``f``."""
    if isinstance(f, _ATOMIC):
        return closure_bracket(*to_tangle(f))
    if isinstance(f, ConnectedSum):
        return reduce(lambda x, y: x * y, (bracket(p, bound) for p in f.parts))
    if isinstance(f, DisjointUnion):
        prod = reduce(lambda x, y: x * y, (bracket(p, bound) for p in f.parts))
        return prod * delta() ** (len(f.parts) - 1)
    if isinstance(f, RawPD):
        return diagram.state_sum_bracket(f.pd, bound=bound)
    raise TypeError(f"not a family spec: {f!r}")


def component_count(f: FamilySpec) -> int:
    if isinstance(f, (Unknot, Kq, Kqr)):
        return 1
    if isinstance(f, Unlink):
        return f.k
    if isinstance(f, Torus):
        return 2 if f.n % 2 == 0 else 1
    if isinstance(f, Twist):
        return 2 if f.m % 2 and f.n % 2 else 1
    if isinstance(f, Pretzel):
        evens = sum(1 for x in (f.p, f.q, f.r) if x % 2 == 0)
        return max(evens, 1)
    if isinstance(f, ConnectedSum):
        return sum(component_count(p) for p in f.parts) - (len(f.parts) - 1)
    if isinstance(f, DisjointUnion):
        return sum(component_count(p) for p in f.parts)
    if isinstance(f, RawPD):
        return diagram.component_count(f.pd)
    raise TypeError(f"not a family spec: {f!r}")


def is_knot(f: FamilySpec) -> bool:
    return component_count(f) == 1


def standard_writhe(f: FamilySpec) -> int:
    """Writhe of the diagram returned by :func:`synthesize`."""
    if isinstance(f, (Unknot, Unlink)):
        return 0
    if isinstance(f, Torus):
        return f.n
    if isinstance(f, Twist):
        if f.n % 2:
            return f.m + f.n
        return f.n - f.m if f.m % 2 == 0 else -f.n - f.m
    if isinstance(f, Pretzel):
        params = (f.p, f.q, f.r)
        evens = [x for x in params if x % 2 == 0]
        odds = [x for x in params if x % 2]
        if not evens:
            return sum(params)
        if len(evens) == 1:
            return evens[0] - sum(odds)
        # pretzel links: no tidy closed form, read it off the diagram
        return diagram.writhe(synthesize(f))
    if isinstance(f, Kq):
        return f.q - 2
    if isinstance(f, Kqr):
        return f.r - f.q + 4
    if isinstance(f, (ConnectedSum, DisjointUnion)):
        return sum(standard_writhe(p) for p in f.parts)
    if isinstance(f, RawPD):
        return diagram.writhe(f.pd)
    raise TypeError(f"not a family spec: {f!r}")


@lru_cache(maxsize=1024)
def synthesize(f: FamilySpec) -> PDCode:
    """An oriented PD code for the standard diagram of ``f``."""
    if isinstance(f, _ATOMIC):
        return diagram.synthesize_pd(*to_tangle(f))
    if isinstance(f, ConnectedSum):
        return reduce(diagram.connected_sum, (synthesize(p) for p in f.parts))
    if isinstance(f, DisjointUnion):
        return diagram.disjoint_union([synthesize(p) for p in f.parts])
    if isinstance(f, RawPD):
        return f.pd
    raise TypeError(f"not a family spec: {f!r}")


def mirror(f: FamilySpec) -> FamilySpec:
    if isinstance(f, (Unknot, Unlink)):
        return f
    if isinstance(f, Torus):
        return Torus(-f.n)
    if isinstance(f, Twist):
        return Twist(-f.m, -f.n)
    if isinstance(f, Pretzel):
        return Pretzel(-f.p, -f.q, -f.r)
    if isinstance(f, ConnectedSum):
        return ConnectedSum(tuple(mirror(p) for p in f.parts))
    if isinstance(f, DisjointUnion):
        return DisjointUnion(tuple(mirror(p) for p in f.parts))
    name = f.name if isinstance(f, RawPD) else str(f)
    return RawPD(diagram.mirror_pd(synthesize(f)), f"mirror-{name}")


def trefoil_sum(n: int) -> FamilySpec:
    """``#^n T(2,3)``; the unknot for ``n = 0``."""
    if n == 0:
        return Unknot()
    if n == 1:
        return Torus(3)
    return ConnectedSum((Torus(3),) * n)


# ---------------------------------------------------------------------------
# fixtures


FIXTURE_NAMES = ("5_2", "7_3", "8_19", "8_20", "10_124", "10_126")


def fixture_path(name: str) -> Path:
    """Path of a packaged PD fixture, e.g. ``"8_20"`` or ``"8_20.pd"``."""
    stem = Path(name).name
    if not stem.endswith(".pd"):
        stem += ".pd"
    return Path(str(resources.files("gordian") / "fixtures" / stem))


@lru_cache(maxsize=64)
def fixture(name: str) -> RawPD:
    path = fixture_path(name)
    if not path.exists():
        raise FileNotFoundError(f"no PD fixture named {name!r}")
    return RawPD(diagram.read_pd(path), path.stem)


# ---------------------------------------------------------------------------
# grammar:  spec := 'unknot' | 'unlink:' k | name ':' ints
#                 | ('sum' | 'sqcup') '(' spec (',' spec)* ')' | 'pd:' path


class FamilySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_ARITY = {"unlink": 1, "torus": 1, "twist": 2, "pretzel": 3, "kq": 1, "kqr": 2}
_CTORS = {
    "unlink": Unlink,
    "torus": Torus,
    "twist": Twist,
    "pretzel": Pretzel,
    "kq": Kq,
    "kqr": Kqr,
}
_NAME = re.compile(r"\s*([a-z]+)")
_INTS = re.compile(r"\s*(-?\d+(?:\s*,\s*-?\d+)*)")


def _resolve_pd(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    packaged = fixture_path(path)
    if packaged.exists():
        return packaged
    raise FileNotFoundError(f"PD file {path!r} not found (also looked in packaged fixtures)")


def parse_family(text: str) -> FamilySpec:
    """Parse ``torus:5``, ``sum(torus:3,twist:2,2)``, ``pd:fixtures/8_20.pd`` ..."""
    pos = 0

    def spec() -> FamilySpec:
        nonlocal pos
        m = _NAME.match(text, pos)
        if m is None:
            raise FamilySyntaxError("expected a family name", pos)
        name, start = m.group(1), m.start(1)
        pos = m.end()
        if name == "unknot":
            return Unknot()
        if name in ("sum", "sqcup"):
            pos = _expect("(", pos)
            parts = [spec()]
            while _peek(pos) == ",":
                pos = _expect(",", pos)
                parts.append(spec())
            pos = _expect(")", pos)
            return ConnectedSum(tuple(parts)) if name == "sum" else DisjointUnion(tuple(parts))
        if name == "pd":
            pos = _expect(":", pos)
            end = pos
            while end < len(text) and text[end] not in ",)":
                end += 1
            path = text[pos:end].strip()
            if not path:
                raise FamilySyntaxError("empty PD path", pos)
            pos = end
            return RawPD(diagram.read_pd(_resolve_pd(path)), path)
        if name not in _ARITY:
            raise FamilySyntaxError(f"unknown family {name!r}", start)
        pos = _expect(":", pos)
        mi = _INTS.match(text, pos)
        if mi is None:
            raise FamilySyntaxError(f"{name} expects integer parameters", pos)
        args = [int(v) for v in mi.group(1).replace(" ", "").split(",")]
        if len(args) < _ARITY[name]:
            raise FamilySyntaxError(f"{name} takes {_ARITY[name]} parameter(s)", pos)
        # a trailing ",x" belongs to an enclosing sum()/sqcup() unless numeric
        args = args[: _ARITY[name]]
        consumed = re.match(r"\s*-?\d+" + r"\s*,\s*-?\d+" * (len(args) - 1), text[pos:])
        pos += consumed.end()
        try:
            return _CTORS[name](*args)
        except ValueError as exc:
            raise FamilySyntaxError(str(exc), start) from None

    def _peek(p: int) -> str | None:
        while p < len(text) and text[p].isspace():
            p += 1
        return text[p] if p < len(text) else None

    def _expect(ch: str, p: int) -> int:
        while p < len(text) and text[p].isspace():
            p += 1
        if p >= len(text) or text[p] != ch:
            raise FamilySyntaxError(f"expected {ch!r}", p)
        return p + 1

    result = spec()
    if _peek(pos) is not None:
        raise FamilySyntaxError("trailing input", len(text) - len(text[pos:].lstrip()))
    return result
