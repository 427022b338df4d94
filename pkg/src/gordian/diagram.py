"""Planar diagram codes, the brute-force bracket state sum, and synthesis.

PD convention: each crossing is ``(i, j, k, l)``, arc labels listed
counterclockwise starting from the incoming under-strand.  Slots ``0, 2`` are
the under-strand, ``1, 3`` the over-strand.  The A-smoothing joins slots
``(0, 1), (2, 3)``; the B-smoothing joins ``(0, 3), (1, 2)``.

Crossingless unknotted components are carried as ``free_loops``; the file
format writes them as a ``U n`` line.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from gordian.laurent import LaurentPoly, delta
from gordian.tangle import (
    DENOMINATOR,
    NUMERATOR,
    HorizontalTwist,
    Mirror,
    Product,
    Sum,
    TangleExpr,
    VerticalTwist,
)

__all__ = [
    "PDCode",
    "PDError",
    "CrossingBoundError",
    "DEFAULT_CROSSING_BOUND",
    "state_sum_bracket",
    "writhe",
    "crossing_signs",
    "component_count",
    "component_arcs",
    "synthesize_pd",
    "connected_sum",
    "disjoint_union",
    "insert_kink",
    "relabel",
    "mirror_pd",
    "reverse_component",
    "parse_pd",
    "format_pd",
    "read_pd",
    "write_pd",
]

DEFAULT_CROSSING_BOUND = 24

Slot = tuple[int, int]


class PDError(ValueError):
    """Structurally malformed PD code."""


class CrossingBoundError(ValueError):
    pass


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    free_loops: int = 0
    # optional per-component arc sequences fixing orientation
    orientations: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        crossings = tuple(tuple(int(a) for a in x) for x in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "orientations", tuple(tuple(o) for o in self.orientations))
        if not self.crossings and self.free_loops < 1:
            raise PDError("empty diagram: no crossings and no free loops")
        if self.free_loops < 0:
            raise PDError("free_loops must be non-negative")
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise PDError(f"crossing {x} does not have four arcs")
            for a in x:
                if a < 1:
                    raise PDError(f"arc label {a} is not positive")
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, n in counts.items() if n != 2)
        if bad:
            raise PDError(f"arc {bad[0]} used {counts[bad[0]]} times (expected 2)")
        for seq in self.orientations:
            for a in seq:
                if a not in counts:
                    raise PDError(f"orientation override names unknown arc {a}")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def labels(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x})

    def _partner(self) -> dict[Slot, Slot]:
        occ: dict[int, list[Slot]] = {}
        for c, x in enumerate(self.crossings):
            for s, a in enumerate(x):
                occ.setdefault(a, []).append((c, s))
        partner = {}
        for a, (p, q) in occ.items():
            partner[p] = q
            partner[q] = p
        return partner


# ---------------------------------------------------------------------------
# traversal and orientation


def _walk(pd: PDCode, partner: dict[Slot, Slot], arrive: Slot) -> list[Slot]:
    """Arrival slots of the oriented component through ``arrive``."""
    seq = []
    cur = arrive
    while True:
        seq.append(cur)
        c, s = cur
        cur = partner[(c, (s + 2) % 4)]
        if cur == arrive:
            return seq


def _oriented_components(pd: PDCode) -> list[list[Slot]]:
    """Components as lists of arrival slots, in a deterministic orientation.

    Orientation per component: an explicit override if present; otherwise the
    PD convention (under-strands enter at slot 0); otherwise, for components
    that never pass under, leave the lowest arc towards its smaller neighbour.
    """
    partner = pd._partner()
    label = {(c, s): a for c, x in enumerate(pd.crossings) for s, a in enumerate(x)}
    seen: set[Slot] = set()
    comps = []
    for a in pd.labels():
        occ = [sl for sl, b in label.items() if b == a]
        if occ[0] in seen:
            continue
        fwd = _walk(pd, partner, occ[0])
        members = set(fwd)
        rev_start = occ[1]
        # the reversed traversal arrives at the exit slots of the forward one
        rev = _walk(pd, partner, rev_start)
        chosen = _choose_orientation(pd, label, fwd, rev)
        comps.append(chosen)
        seen.update(members)
        seen.update(rev)
    return comps


def _choose_orientation(pd, label, fwd, rev):
    arcs = {label[s] for s in fwd}
    for seq in pd.orientations:
        if seq and seq[0] in arcs:
            if len(seq) == 1:
                return fwd
            # a two-arc sequence reads the same both ways round; the first
            # arc is then taken to point into the lower-indexed crossing
            hits = [
                (c, i)
                for i, cand in enumerate((fwd, rev))
                for c, s in cand
                if label[(c, s)] == seq[0] and label[(c, (s + 2) % 4)] == seq[1]
            ]
            if not hits:
                raise PDError(f"orientation override {seq} does not follow the diagram")
            return (fwd, rev)[min(hits)[1]]
    for cand in (fwd, rev):
        unders = [s for _, s in cand if s % 2 == 0]
        if unders:
            if all(s == 0 for s in unders):
                return cand
            if all(s == 2 for s in unders):
                continue
            raise PDError("inconsistent under-strand orientation in PD code")
    if any(s % 2 == 0 for _, s in fwd):
        raise PDError("inconsistent under-strand orientation in PD code")
    seed = min(arcs)

    def next_label(cand):
        for c, s in cand:
            if label[(c, s)] == seed:
                return label[(c, (s + 2) % 4)]
        raise AssertionError

    return min((fwd, rev), key=lambda cand: (next_label(cand), cand[0]))


def component_arcs(pd: PDCode) -> list[list[int]]:
    """Arc labels of each oriented component in traversal order.

    A component made of two arcs reads the same cyclically in both
    directions; its orientation shows up only through the writhe.
    """
    label = {(c, s): a for c, x in enumerate(pd.crossings) for s, a in enumerate(x)}
    return [[label[sl] for sl in comp] for comp in _oriented_components(pd)]


def component_count(pd: PDCode) -> int:
    return len(_oriented_components(pd)) + pd.free_loops


def crossing_signs(pd: PDCode) -> list[int]:
    under_in: dict[int, int] = {}
    over_in: dict[int, int] = {}
    for comp in _oriented_components(pd):
        for c, s in comp:
            (under_in if s % 2 == 0 else over_in)[c] = s
    return [1 if (under_in[c] == 0) == (over_in[c] == 3) else -1 for c in range(pd.n_crossings)]


def writhe(pd: PDCode) -> int:
    return sum(crossing_signs(pd))


def relabel(pd: PDCode) -> PDCode:
    """Relabel arcs consecutively along the oriented components.

    Each crossing is rotated so its first entry is the incoming under-arc;
    components that never pass under get an explicit orientation override.
    """
    if not pd.crossings:
        return pd
    partner, hints = _slots(pd)
    return _pd_from_slots(partner, pd.n_crossings, pd.free_loops, hints)


def mirror_pd(pd: PDCode) -> PDCode:
    """Switch every crossing; orientations are kept."""
    comps = _oriented_components(pd)
    over_in = {c: s for comp in comps for c, s in comp if s % 2}

    def rot(p):
        return (p[0], (p[1] - over_in[p[0]]) % 4)

    partner = {rot(p): rot(q) for p, q in pd._partner().items()}
    hints = [rot(comp[0]) for comp in comps]
    return _pd_from_slots(partner, pd.n_crossings, pd.free_loops, hints)


def reverse_component(pd: PDCode, arc: int) -> PDCode:
    """The same diagram with the component through ``arc`` reversed."""
    if arc not in pd.labels():
        raise PDError(f"unknown arc {arc}")
    hints = []
    for comp in _oriented_components(pd):
        if any(arc in (pd.crossings[c][s], pd.crossings[c][(s + 2) % 4]) for c, s in comp):
            c, s = comp[0]
            hints.append((c, (s + 2) % 4))
        else:
            hints.append(comp[0])
    return _pd_from_slots(pd._partner(), pd.n_crossings, pd.free_loops, hints)


# ---------------------------------------------------------------------------
# state sum


def _smoothing_pairs(pd: PDCode):
    index = {a: i for i, a in enumerate(pd.labels())}
    a_pairs, b_pairs = [], []
    for i, j, k, l in pd.crossings:
        a_pairs.append(((index[i], index[j]), (index[k], index[l])))
        b_pairs.append(((index[i], index[l]), (index[j], index[k])))
    return len(index), a_pairs, b_pairs


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _gray_counts(pd: PDCode, lo: int, hi: int) -> dict[tuple[int, int], int]:
    """Tally ``(#A - #B, loops)`` over Gray-code states ``lo <= i < hi``."""
    n, a_pairs, b_pairs = _smoothing_pairs(pd)
    c = pd.n_crossings
    counts: dict[tuple[int, int], int] = {}
    for i in range(lo, hi):
        g = i ^ (i >> 1)
        parent = list(range(n))
        comps = n
        nb = 0
        for k in range(c):
            if (g >> k) & 1:
                pairs = b_pairs[k]
                nb += 1
            else:
                pairs = a_pairs[k]
            for x, y in pairs:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        key = (c - 2 * nb, comps)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _counts_to_poly(counts, free_loops: int) -> LaurentPoly:
    d = delta()
    powers: dict[int, LaurentPoly] = {}
    total = LaurentPoly.zero()
    for (ab, loops), k in sorted(counts.items()):
        m = loops + free_loops - 1
        if m not in powers:
            powers[m] = d ** m
        total = total + powers[m].shift(ab) * k
    return total


def state_sum_bracket(
    pd: PDCode, bound: int = DEFAULT_CROSSING_BOUND, workers: int = 1
) -> LaurentPoly:
    """Kauffman bracket by enumerating all ``2^c`` smoothings.

    Loops are counted with union-find per state; states are visited in
    Gray-code order.  ``workers > 1`` splits the state range across processes.
    """
    c = pd.n_crossings
    if c > bound:
        raise CrossingBoundError(f"{c} crossings exceeds the state-sum bound of {bound}")
    if c == 0:
        return delta() ** (pd.free_loops - 1)
    total = 1 << c
    if workers <= 1:
        return _counts_to_poly(_gray_counts(pd, 0, total), pd.free_loops)
    cuts = [total * i // workers for i in range(workers + 1)]
    merged: dict[tuple[int, int], int] = {}
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(_gray_counts, pd, cuts[i], cuts[i + 1]) for i in range(workers)]
        for fut in futs:
            for key, v in fut.result().items():
                merged[key] = merged.get(key, 0) + v
    return _counts_to_poly(merged, pd.free_loops)


# ---------------------------------------------------------------------------
# synthesis from tangle expressions


class _Diagram:
    """Open tangle diagram: crossings plus a symmetric endpoint pairing.

    Endpoints are crossing slots ``(c, s)`` or boundary terminals
    ``("t", id)``; ``corners`` names the four terminals.
    """

    _ids = itertools.count()

    def __init__(self):
        self.ncross = 0
        self.partner: dict = {}
        self.corners: dict[str, tuple] = {}
        self.loops = 0

    @classmethod
    def _fresh_corners(cls) -> dict[str, tuple]:
        return {k: ("t", next(cls._ids)) for k in ("NW", "NE", "SW", "SE")}

    def _link(self, p, q):
        self.partner[p] = q
        self.partner[q] = p

    @classmethod
    def crossing(cls) -> _Diagram:
        # the [1] tangle: under-strand SW-NE, over-strand SE-NW
        d = cls()
        d.ncross = 1
        d.corners = cls._fresh_corners()
        for s, k in enumerate(("SW", "SE", "NE", "NW")):
            d._link((0, s), d.corners[k])
        return d

    @classmethod
    def trivial(cls, infinity: bool) -> _Diagram:
        d = cls()
        d.corners = cls._fresh_corners()
        c = d.corners
        if infinity:
            d._link(c["NW"], c["SW"])
            d._link(c["NE"], c["SE"])
        else:
            d._link(c["NW"], c["NE"])
            d._link(c["SW"], c["SE"])
        return d

    def mirrored(self) -> _Diagram:
        d = _Diagram()
        d.ncross, d.corners, d.loops = self.ncross, dict(self.corners), self.loops

        def rot(p):
            return (p[0], (p[1] - 1) % 4) if p[0] != "t" else p

        d.partner = {rot(p): rot(q) for p, q in self.partner.items()}
        return d

    def _absorb(self, other: _Diagram) -> None:
        off = self.ncross

        def shift(p):
            return (p[0] + off, p[1]) if p[0] != "t" else p

        for p, q in other.partner.items():
            self.partner[shift(p)] = shift(q)
        self.ncross += other.ncross
        self.loops += other.loops

    def _glue(self, u, v) -> None:
        x, y = self.partner.pop(u), self.partner.pop(v)
        if x == v:
            self.loops += 1
        else:
            self._link(x, y)

    @staticmethod
    def compose(t: _Diagram, u: _Diagram, horizontal: bool) -> _Diagram:
        d = _Diagram()
        d.ncross, d.loops = t.ncross, t.loops
        d.partner = dict(t.partner)
        d._absorb(u)
        tc, uc = t.corners, u.corners
        if horizontal:
            d._glue(tc["NE"], uc["NW"])
            d._glue(tc["SE"], uc["SW"])
            d.corners = {"NW": tc["NW"], "SW": tc["SW"], "NE": uc["NE"], "SE": uc["SE"]}
        else:
            d._glue(tc["SW"], uc["NW"])
            d._glue(tc["SE"], uc["NE"])
            d.corners = {"NW": tc["NW"], "NE": tc["NE"], "SW": uc["SW"], "SE": uc["SE"]}
        return d

    def close(self, which: str) -> tuple[dict, int, int, list]:
        """Cap off the corners; return (partner, ncross, loops, entry hints)."""
        c = self.corners
        if which == NUMERATOR:
            pairs, entries = (("NW", "NE"), ("SW", "SE")), ("NW", "SW")
        elif which == DENOMINATOR:
            pairs, entries = (("NW", "SW"), ("NE", "SE")), ("NW", "NE")
        else:
            raise ValueError(f"closure must be 'N' or 'D', got {which!r}")
        caps = {a: b for a, b in pairs} | {b: a for a, b in pairs}
        by_key = {v: k for k, v in c.items()}
        hints = []
        for start in entries:
            w = self.partner[c[start]]
            guard = 0
            while w[0] == "t":
                corner = caps[by_key[w]]
                if corner == start:
                    w = None
                    break
                w = self.partner[c[corner]]
                guard += 1
                if guard > 4:
                    w = None
                    break
            if w is not None:
                hints.append(w)
        d = _Diagram()
        d.partner = dict(self.partner)
        d.loops = self.loops
        for a, b in pairs:
            d._glue(c[a], c[b])
        return d.partner, self.ncross, d.loops, hints


def _build(t: TangleExpr) -> _Diagram:
    if isinstance(t, HorizontalTwist):
        if t.n == 0:
            return _Diagram.trivial(infinity=False)
        d = _Diagram.crossing()
        for _ in range(t.n - 1):
            d = _Diagram.compose(d, _Diagram.crossing(), horizontal=True)
        return d
    if isinstance(t, VerticalTwist):
        if t.n == 0:
            return _Diagram.trivial(infinity=True)
        d = _Diagram.crossing()
        for _ in range(t.n - 1):
            d = _Diagram.compose(d, _Diagram.crossing(), horizontal=False)
        return d
    if isinstance(t, Mirror):
        return _build(t.inner).mirrored()
    if isinstance(t, Sum):
        return _Diagram.compose(_build(t.left), _build(t.right), horizontal=True)
    if isinstance(t, Product):
        return _Diagram.compose(_build(t.top), _build(t.bottom), horizontal=False)
    raise TypeError(f"not a tangle expression: {t!r}")


def _pd_from_slots(partner: dict, ncross: int, loops: int, hints: list) -> PDCode:
    visited: set = set()
    comps = []
    starts = list(hints) + sorted(p for p in partner)
    for st in starts:
        if st in visited:
            continue
        seq = []
        cur = st
        while True:
            seq.append(cur)
            visited.add(cur)
            ex = (cur[0], (cur[1] + 2) % 4)
            visited.add(ex)
            cur = partner[ex]
            if cur == st:
                break
        comps.append(seq)
    if ncross == 0:
        return PDCode((), loops)
    labels = [[0, 0, 0, 0] for _ in range(ncross)]
    under_in = {}
    overrides = []
    nxt = 1
    for seq in comps:
        arcs = []
        for c, s in seq:
            ex = (c, (s + 2) % 4)
            arr = partner[ex]
            labels[c][ex[1]] = nxt
            labels[arr[0]][arr[1]] = nxt
            arcs.append(nxt)
            nxt += 1
            if s % 2 == 0:
                under_in[c] = s
        if not any(s % 2 == 0 for _, s in seq):
            # start at the arc whose head has the lowest crossing index
            k = min(range(len(seq)), key=lambda i: seq[(i + 1) % len(seq)][0])
            overrides.append((arcs[k], arcs[(k + 1) % len(arcs)]))
    crossings = tuple(tuple(x[under_in[c]:] + x[: under_in[c]]) for c, x in enumerate(labels))
    return PDCode(crossings, loops, tuple(overrides))


def synthesize_pd(t: TangleExpr, closure: str) -> PDCode:
    """PD code of the closure of ``t``.

    Components meeting the tangle boundary are oriented to enter at NW, and at
    SW (numerator closure) or NE (denominator closure); for twist regions this
    is the parallel orientation.
    """
    partner, ncross, loops, hints = _build(t).close(closure)
    return _pd_from_slots(partner, ncross, loops, hints)


# ---------------------------------------------------------------------------
# diagram surgery


def _slots(pd: PDCode, offset: int = 0) -> tuple[dict, list[Slot]]:
    """Slot pairing and one arrival slot per oriented component."""
    partner = {
        (c + offset, s): (d + offset, t) for (c, s), (d, t) in pd._partner().items()
    }
    hints = [(comp[0][0] + offset, comp[0][1]) for comp in _oriented_components(pd)]
    return partner, hints


def _splice(partner: dict, head_a: Slot, head_b: Slot) -> None:
    """Swap the heads of two arcs (given by their arrival slots)."""
    tail_a = partner[head_a]
    tail_b = partner[head_b]
    partner[tail_a], partner[head_b] = head_b, tail_a
    partner[tail_b], partner[head_a] = head_a, tail_b


def connected_sum(p1: PDCode, p2: PDCode) -> PDCode:
    """Band the first components of the two diagrams together along their
    lowest arcs, preserving orientation."""
    if not p1.crossings or not p2.crossings:
        knotted, trivial = (p2, p1) if not p1.crossings else (p1, p2)
        if trivial.free_loops == 1:
            return knotted
        return disjoint_union([knotted, PDCode((), trivial.free_loops - 1)])
    part1, hints1 = _slots(p1)
    part2, hints2 = _slots(p2, offset=p1.n_crossings)
    partner = part1 | part2
    _splice(partner, hints1[0], hints2[0])
    return _pd_from_slots(
        partner, p1.n_crossings + p2.n_crossings, p1.free_loops + p2.free_loops, hints1 + hints2
    )


def disjoint_union(parts: list[PDCode]) -> PDCode:
    partner: dict = {}
    hints: list[Slot] = []
    off = loops = 0
    for p in parts:
        part, h = _slots(p, offset=off)
        partner |= part
        hints += h
        off += p.n_crossings
        loops += p.free_loops
    return _pd_from_slots(partner, off, loops, hints)


def insert_kink(pd: PDCode, arc: int, sign: int) -> PDCode:
    """Add a Reidemeister-I curl with crossing sign ``sign`` on ``arc``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    label = {(c, s): a for c, x in enumerate(pd.crossings) for s, a in enumerate(x)}
    heads = {label[sl]: sl for comp in _oriented_components(pd) for sl in comp}
    if arc not in heads:
        raise PDError(f"unknown arc {arc}")
    partner, hints = _slots(pd)
    head = heads[arc]
    tail = partner[head]
    k = pd.n_crossings
    # enter under at slot 0, curl from slot 2 to an adjacent slot, leave over
    curl, out = ((k, 3), (k, 1)) if sign > 0 else ((k, 1), (k, 3))
    for p, q in ((tail, (k, 0)), ((k, 2), curl), (out, head)):
        partner[p] = q
        partner[q] = p
    return _pd_from_slots(partner, k + 1, pd.free_loops, hints)


# ---------------------------------------------------------------------------
# file format


def parse_pd(text: str) -> PDCode:
    """Parse ``X i j k l`` / ``O a,b,...`` / ``U n`` lines; ``#`` starts a comment."""
    crossings = []
    overrides = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "X":
                vals = tuple(int(v) for v in rest.split())
                if len(vals) != 4:
                    raise PDError(f"line {lineno}: crossing needs four arc labels")
                crossings.append(vals)
            elif head == "O":
                overrides.append(tuple(int(v) for v in rest.replace(",", " ").split()))
            elif head == "U":
                loops += int(rest)
            else:
                raise PDError(f"line {lineno}: unknown record {head!r}")
        except ValueError as exc:
            if isinstance(exc, PDError):
                raise
            raise PDError(f"line {lineno}: {exc}") from None
    if not crossings and loops == 0:
        loops = 1
    return PDCode(tuple(crossings), loops, tuple(overrides))


def format_pd(pd: PDCode, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += ["X " + " ".join(str(a) for a in x) for x in pd.crossings]
    lines += ["O " + ",".join(str(a) for a in o) for o in pd.orientations]
    if pd.free_loops and pd.crossings:
        lines.append(f"U {pd.free_loops}")
    elif not pd.crossings and pd.free_loops > 1:
        lines.append(f"U {pd.free_loops}")
    return "\n".join(lines) + "\n"


def read_pd(path: str | Path) -> PDCode:
    return parse_pd(Path(path).read_text())


def write_pd(pd: PDCode, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_pd(pd, comment))
