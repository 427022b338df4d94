"""Finite windows of quotient knot graphs, assembled from edge certificates.

A vertex is an invariant value; an edge ``{u, v}`` is added only when a
certificate (two concrete families related by one move) is re-verified by the
engine.  Windows are therefore subgraphs of the true quotient graphs.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from gordian import families as fam
from gordian import invariants as inv
from gordian.diagram import CrossingBoundError
from gordian.families import (
    ConnectedSum,
    DisjointUnion,
    FamilySpec,
    Kq,
    Kqr,
    Pretzel,
    Torus,
    Twist,
    Unknot,
    Unlink,
)

__all__ = [
    "CROSSING",
    "H2",
    "H2_LINKS",
    "MOVES",
    "INVARIANTS",
    "CATEGORIES",
    "QuotientSpec",
    "EdgeCertificate",
    "Verification",
    "FiniteGraph",
    "Window",
    "HyperbolicityBoundError",
    "build_window",
    "candidates",
    "seven_case_certificate",
    "seven_case_candidates",
    "sporadic_certificates",
    "graph_distance",
    "diameter",
    "hyperbolicity_four_point",
    "hyperbolicity_thin_triangle",
    "thin_triangle_bounds",
    "structure_predicates",
]

CROSSING = "crossing_change"
H2 = "h2_component_preserving"
H2_LINKS = "h2_links"
MOVES = (CROSSING, H2, H2_LINKS)
INVARIANTS = ("beta", "det", "span")
CATEGORIES = ("knots", "links")


@dataclass(frozen=True)
class QuotientSpec:
    move: str
    invariant: str
    category: str
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(sorted(set(self.window))))
        if self.move not in MOVES:
            raise ValueError(f"unknown move {self.move!r}")
        if self.invariant not in INVARIANTS:
            raise ValueError(f"unknown invariant {self.invariant!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if (self.move == H2_LINKS) != (self.category == "links"):
            raise ValueError("the links category goes with h2_links moves only")
        w = self.window
        if not w:
            raise ValueError("empty window")
        if self.invariant == "beta" and min(w) < 1:
            raise ValueError("beta takes values 1, 2, ...")
        if self.invariant == "det" and any(v < 1 or v % 2 == 0 for v in w):
            raise ValueError("knot determinants are odd naturals")
        if self.invariant == "span":
            if min(w) < 0:
                raise ValueError("spans are non-negative")
            if self.category == "knots" and any(v in (1, 2) for v in w):
                raise ValueError("no knot has span 1 or 2")

    def to_dict(self) -> dict:
        return {
            "move": self.move,
            "invariant": self.invariant,
            "category": self.category,
            "window": list(self.window),
        }


@dataclass(frozen=True)
class Verification:
    ok: bool
    values: tuple
    beta_step: int | None
    reasons: tuple[str, ...] = ()


_INVARIANT_FN = {"beta": inv.beta, "det": inv.determinant, "span": inv.span_t}


@dataclass(frozen=True)
class EdgeCertificate:
    """``left`` and ``right`` differ by one ``move``; ``construction`` names
    the source of the witness; ``expected`` are the two invariant values."""

    left: FamilySpec
    right: FamilySpec
    move: str
    construction: str
    expected: tuple[int, int]
    invariant: str

    def verify(self) -> Verification:
        reasons = []
        try:
            fn = _INVARIANT_FN[self.invariant]
            values = (fn(self.left), fn(self.right))
            step = inv.beta_step(self.left, self.right)
        except (inv.InconsistencyError, CrossingBoundError) as exc:
            return Verification(False, (), None, (f"engine error: {exc}",))
        for side, got, want in zip(("left", "right"), values, self.expected):
            if got != want:
                reasons.append(f"{side} {self.invariant} is {got}, expected {want}")
        if step > 1:
            reasons.append(f"beta changes by {step} under a single move")
        if self.move != H2_LINKS:
            for side, f in (("left", self.left), ("right", self.right)):
                if not fam.is_knot(f):
                    reasons.append(f"{side} {f} is not a knot")
        return Verification(not reasons, values, step, tuple(reasons))

    def key(self) -> tuple[int, int]:
        return tuple(sorted(self.expected))

    def to_dict(self) -> dict:
        return {
            "left": str(self.left),
            "right": str(self.right),
            "move": self.move,
            "construction": self.construction,
            "invariant": self.invariant,
            "expected": list(self.expected),
        }


# ---------------------------------------------------------------------------
# certificate catalogs


def _cert(left, right, move, tag, u, v, invariant) -> EdgeCertificate:
    return EdgeCertificate(left, right, move, tag, (u, v), invariant)


def _twist2(k: int) -> FamilySpec:
    """``K(2, k)``; ``K(2, 0)`` is the unknot."""
    return Unknot() if k == 0 else Twist(2, k)


def _torus_or_unknot(n: int) -> FamilySpec:
    return Unknot() if abs(n) == 1 else Torus(n)


def _beta_candidates(spec, u, v):
    if v != u + 1:
        return []
    left, right = fam.trefoil_sum(u - 1), fam.trefoil_sum(u)
    return [_cert(left, right, spec.move, "trefoil-sum-path", u, v, "beta")]


def _power_of_same_base(u: int, v: int) -> bool:
    for n in range(3, u + 1, 2):
        k = u
        i = 0
        while k % n == 0:
            k //= n
            i += 1
        if k == 1 and i >= 1:
            w, j = v, 0
            while w % n == 0:
                w //= n
                j += 1
            if w == 1 and j > i:
                return True
    return False


def _det_candidates(spec, u, v):
    move, out = spec.move, []
    if u == 1:
        k = (v - 1) // 2
        if move == CROSSING:
            out.append(_cert(Unknot(), Twist(k, 2), move, "twist-unknotting-det", u, v, "det"))
        else:
            out.append(_cert(Unknot(), Torus(v), move, "torus-h2-unknotting-det", u, v, "det"))
        return out
    if v % u == 0:
        d = v // u
        tag = "power-complete-det" if _power_of_same_base(u, v) else "divisor-det"
        if move == CROSSING:
            base = Twist(2, (u - 1) // 2)
            summand = ConnectedSum((base, Twist(2, (d - 1) // 2)))
            out.append(_cert(base, summand, move, tag, u, v, "det"))
        else:
            # as printed, with half-parameters; then the torus knots of
            # determinants u and d themselves
            lit_a, lit_d = (u - 1) // 2, (d - 1) // 2
            if lit_a and lit_d:
                base = _torus_or_unknot(lit_a)
                summand = ConnectedSum((base, _torus_or_unknot(lit_d)))
                out.append(_cert(base, summand, move, tag + "-as-printed", u, v, "det"))
            base = Torus(u)
            summand = ConnectedSum((base, Torus(d)))
            out.append(_cert(base, summand, move, tag + "-torus", u, v, "det"))
    n = (u - 1) // 2
    if move == CROSSING and v == u + 4:
        out.append(_cert(Twist(2, n), Twist(2, n + 2), move, "twist-pair-det", u, v, "det"))
    if move == H2 and v == u + 2:
        out.append(_cert(Twist(2, n), Twist(2, n + 1), move, "twist-pair-det", u, v, "det"))
    p = n
    if move == CROSSING and v == 4 * p + 3:
        out.append(_cert(Pretzel(p, 1, 1), Pretzel(p, 3, 1), move, "pretzel-det", u, v, "det"))
    if move == H2 and 3 * p + 2 == v:
        out.append(_cert(Pretzel(p, 1, 1), Pretzel(p, 2, 1), move, "pretzel-det", u, v, "det"))
    return out


def sporadic_certificates() -> list[EdgeCertificate]:
    """Knots related by a crossing change whose spans differ by one."""
    f = fam.fixture
    pairs = [
        (f("5_2"), Pretzel(3, -3, 2), 5, 6, "sporadic-5_2/8_20"),
        (f("8_19"), Pretzel(5, 3, -2), 5, 6, "sporadic-8_19/P(5,3,-2)"),
        (f("10_124"), Torus(7), 6, 7, "sporadic-10_124/T(2,7)"),
        (f("7_3"), Pretzel(-5, 3, 2), 7, 8, "sporadic-7_3/10_126"),
    ]
    return [_cert(a, b, CROSSING, tag, u, v, "span") for a, b, u, v, tag in pairs]


def _span_knot_candidates(spec, u, v):
    move, out = spec.move, []
    if move == CROSSING:
        if u == 0:
            out.append(_cert(Unknot(), _twist2(v - 2), move, "twist-span-crossing", u, v, "span"))
        elif v == u + 2:
            left = _twist2(u - 2)
            out.append(_cert(left, Twist(2, u), move, "twist-span-crossing", u, v, "span"))
        elif v > u + 2:
            base = _twist2(u - 2)
            summand = ConnectedSum((base, Twist(2, v - u - 2)))
            out.append(_cert(base, summand, move, "twist-sum-span-crossing", u, v, "span"))
        else:
            out += [c for c in sporadic_certificates() if c.expected == (u, v)]
        return out
    # component-preserving H(2) moves on knots
    if u == 0 and v % 2 == 1:
        out.append(_cert(Unknot(), Torus(v), move, "torus-h2-span", u, v, "span"))
    if u >= 3 and v == u + 1:
        tag = "twist-h2-span-as-printed"
        out.append(_cert(Twist(u, 1), Twist(u + 1, 2), move, tag, u, v, "span"))
        out.append(_cert(Twist(2, u - 2), Twist(2, u - 1), move, "twist-h2-span", u, v, "span"))
    if u >= 3 and v - u > 1:
        out += [c for c in seven_case_candidates(u, v) if c.move == H2]
    return out


def seven_case_candidates(m: int, n: int) -> list[EdgeCertificate]:
    """Certificates for the span pair ``{m, n}`` in the H(2) graph of links:
    the construction of the matching case first, then substitutes."""
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")

    def c(left, right, tag, move=H2_LINKS):
        return _cert(left, right, move, tag, m, n, "span")

    if m == 0:
        right = Torus(0) if n == 1 else Torus(n)
        return [c(Unknot(), right, "seven-cases/case1")]
    if m == 1:
        if n == 2:
            return [c(Unlink(2), Unlink(3), "seven-cases/case2")]
        return [c(Unlink(2), DisjointUnion((Unknot(), Torus(n - 1))), "seven-cases/case2")]
    if m == 2:
        if n == 3:
            return [c(Torus(2), Torus(3), "seven-cases/case3")]
        return [c(Torus(2), ConnectedSum((Torus(2), Torus(n - 2))), "seven-cases/case3")]
    if n == m + 1:
        return [
            c(Torus(m), Torus(n), "seven-cases/case4"),
            c(_twist2(m - 2), Twist(2, n - 2), "seven-cases/case4-twist"),
        ]
    if m % 2 == 0 and n % 2 == 0:
        q, r = m - 3, n - m + 1
        base = _twist2(m - 2)
        return [
            c(Kq(q), Kqr(q, r), "seven-cases/case5", move=H2),
            c(base, ConnectedSum((base, Torus(n - m))), "seven-cases/case5-substitute"),
        ]
    if m % 2 == 1 and n % 2 == 1:
        return [c(Torus(m), Twist(m, n - m), "seven-cases/case6", move=H2)]
    base = _twist2(m - 2)
    return [c(base, ConnectedSum((Torus(n - m), base)), "seven-cases/case7", move=H2)]


def seven_case_certificate(m: int, n: int) -> EdgeCertificate:
    """The certificate named by the case analysis for ``{m, n}``."""
    return seven_case_candidates(m, n)[0]


def candidates(spec: QuotientSpec, u: int, v: int) -> list[EdgeCertificate]:
    """Candidate certificates for the pair ``u < v``, in order of preference."""
    if spec.invariant == "beta":
        if spec.category != "knots":
            return []
        return _beta_candidates(spec, u, v)
    if spec.invariant == "det":
        return _det_candidates(spec, u, v)
    if spec.category == "links":
        return seven_case_candidates(u, v)
    return _span_knot_candidates(spec, u, v)


# ---------------------------------------------------------------------------
# graphs


@dataclass
class FiniteGraph:
    vertices: list
    edges: set = field(default_factory=set)

    def __post_init__(self):
        self.vertices = sorted(set(self.vertices))
        vs = set(self.vertices)
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {(u, v)} leaves the vertex set")
            clean.add((min(u, v), max(u, v)))
        self.edges = clean

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def sorted_edges(self) -> list[tuple]:
        return sorted(self.edges)


@dataclass
class Window:
    spec: QuotientSpec
    graph: FiniteGraph
    certificates: list[EdgeCertificate]
    failed: list[tuple[EdgeCertificate, Verification]]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "certificates": [c.to_dict() for c in self.certificates],
            "failed": [c.to_dict() | {"reasons": list(v.reasons)} for c, v in self.failed],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self) -> str:
        name = f"{self.spec.move}_{self.spec.invariant}_{self.spec.category}"
        lines = [f"graph {json.dumps(name)} {{"]
        for v in self.graph.vertices:
            lines.append(f'  "{v}";')
        for c in self.certificates:
            u, v = c.key()
            tip = f"{c.construction}: {c.left} ~ {c.right}"
            lines.append(f'  "{u}" -- "{v}" [tooltip={json.dumps(tip)}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """One row per vertex: a certified representative and its invariants."""
        reps: dict[int, FamilySpec] = {}
        for c in self.certificates:
            for f, val in zip((c.left, c.right), c.expected):
                reps.setdefault(val, f)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "representative", "components", "span", "det", "beta"])
        for val in self.graph.vertices:
            f = reps.get(val)
            if f is None:
                w.writerow([val, "", "", "", "", ""])
            else:
                comps = fam.component_count(f)
                w.writerow([val, str(f), comps, inv.span_t(f), inv.determinant(f), inv.beta(f)])
        return buf.getvalue()


def _check_pair(args):
    spec, u, v = args
    tried = []
    for cert in candidates(spec, u, v):
        res = cert.verify()
        if res.ok:
            return cert, tried
        tried.append((cert, res))
    return None, tried


def build_window(spec: QuotientSpec, workers: int = 1) -> Window:
    """Assemble the window graph; the first verifying candidate per pair wins
    and every failed candidate is kept."""
    jobs = [(spec, u, v) for u, v in itertools.combinations(spec.window, 2)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_check_pair, jobs, chunksize=8))
    else:
        results = [_check_pair(j) for j in jobs]
    certs, failed = [], []
    for ok, tried in results:
        failed += tried
        if ok is not None:
            certs.append(ok)
    graph = FiniteGraph(list(spec.window), {c.key() for c in certs})
    return Window(spec, graph, certs, failed)


# ---------------------------------------------------------------------------
# metrics


def _require(g: FiniteGraph, *vs) -> None:
    known = set(g.vertices)
    for v in vs:
        if v not in known:
            raise KeyError(f"unknown vertex {v!r}")


def graph_distance(g: FiniteGraph, u, v) -> float:
    _require(g, u, v)
    try:
        return nx.shortest_path_length(g.to_networkx(), u, v)
    except nx.NetworkXNoPath:
        return math.inf


def diameter(g: FiniteGraph) -> float:
    if len(g.vertices) <= 1:
        return 0
    gx = g.to_networkx()
    if not nx.is_connected(gx):
        return math.inf
    return nx.diameter(gx)


def _connected_distances(g: FiniteGraph) -> dict:
    gx = g.to_networkx()
    if len(g.vertices) > 1 and not nx.is_connected(gx):
        raise ValueError("hyperbolicity is only defined here for connected graphs")
    return dict(nx.all_pairs_shortest_path_length(gx))


class HyperbolicityBoundError(ValueError):
    pass


def hyperbolicity_four_point(g: FiniteGraph, vertex_bound: int = 200) -> Fraction:
    """Largest ``(S1 - S2) / 2`` over quadruples, ``S1 >= S2 >= S3`` the three
    pairings of distance sums."""
    if len(g.vertices) > vertex_bound:
        raise HyperbolicityBoundError(
            f"{len(g.vertices)} vertices exceeds the four-point bound {vertex_bound}"
        )
    d = _connected_distances(g)
    best = 0
    for x, y, z, w in itertools.combinations(g.vertices, 4):
        s = sorted((d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]), reverse=True)
        best = max(best, s[0] - s[1])
    return Fraction(best, 2)


def hyperbolicity_thin_triangle(
    g: FiniteGraph, vertex_bound: int = 12, geodesic_cap: int = 64
) -> Fraction:
    """Thin-triangle constant sampled at vertices.

    For every vertex triple and every choice of geodesic sides, take the
    largest distance from a vertex of one side to the union of the other two.
    Points inside edges can add at most 1/2 to this; see
    :func:`thin_triangle_bounds`.
    """
    n = len(g.vertices)
    if n > vertex_bound:
        raise HyperbolicityBoundError(
            f"{n} vertices exceeds the thin-triangle bound {vertex_bound}; "
            "use the four-point measure instead"
        )
    d = _connected_distances(g)
    gx = g.to_networkx()
    geo: dict = {}

    def geodesics(a, b):
        if (a, b) not in geo:
            paths = []
            for p in nx.all_shortest_paths(gx, a, b):
                paths.append(frozenset(p))
                if len(paths) > geodesic_cap:
                    raise HyperbolicityBoundError(
                        f"more than {geodesic_cap} geodesics between {a} and {b}"
                    )
            geo[(a, b)] = paths
        return geo[(a, b)]

    def gap(side, others):
        return max(min(d[p][q] for q in others) for p in side)

    best = 0
    for x, y, z in itertools.combinations(g.vertices, 3):
        for s1, s2, s3 in itertools.product(geodesics(x, y), geodesics(y, z), geodesics(z, x)):
            best = max(best, gap(s1, s2 | s3), gap(s2, s1 | s3), gap(s3, s1 | s2))
    return Fraction(best)


def thin_triangle_bounds(g: FiniteGraph, vertex_bound: int = 12) -> tuple[Fraction, Fraction]:
    """``(vertex-sampled delta, delta + 1/2)``; the true constant lies between."""
    lo = hyperbolicity_thin_triangle(g, vertex_bound)
    return lo, lo + Fraction(1, 2)


def structure_predicates(g: FiniteGraph) -> dict:
    gx = g.to_networkx()
    n, m = gx.number_of_nodes(), gx.number_of_edges()
    connected = n <= 1 or nx.is_connected(gx)
    is_tree = connected and m == n - 1
    return {
        "is_path": is_tree and all(deg <= 2 for _, deg in gx.degree()),
        "is_complete": m == n * (n - 1) // 2,
        "is_tree": is_tree,
        "diameter": diameter(g),
    }
