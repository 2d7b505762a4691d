"""Planar upward drawings with exact rational geometry.

A diagram assigns each element a point with Fraction coordinates and each
cover relation a strictly y-increasing polyline.  All predicates used by the
partition pipeline (line crossings, sides seen, separators, dangerous and
special pairs) reduce to exact segment arithmetic, so there are no epsilon
questions anywhere.

Walk semantics: a y-increasing curve inside the drawing can switch edges
only at elements (curves meet nowhere else in a valid diagram), so the walks
through p crossing a horizontal line Y upward are exactly the witnessing
paths p <= u followed by an edge (u, v) with y(u) < Y < y(v); line_crossings
materializes that reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .dimension import (
    IncPair,
    StrictAltCycle,
    enumerate_strict_cycles,
    inc_between,
    is_reversible,
    reverses_all,
    reversing_extension,
)
from .errors import DegenerateWalk, FalsifiedClaim, PreconditionFailed
from .poset import Poset, _bits

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear-with and between a and b (inclusive)."""
    if _cross(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segment_intersections(
    a1: Point, a2: Point, b1: Point, b2: Point
) -> tuple[str, list[Point]]:
    """Exact intersection of two closed segments.

    Returns ("none", []), ("point", [p]) or ("overlap", [p, q]) where p, q
    bound the shared collinear piece.
    """
    d1 = _cross(b1, b2, a1)
    d2 = _cross(b1, b2, a2)
    d3 = _cross(a1, a2, b1)
    d4 = _cross(a1, a2, b2)
    if d1 == d2 == d3 == d4 == 0:
        # collinear: project on the dominant axis
        axis = 0 if max(a1[0], a2[0], b1[0], b2[0]) != min(a1[0], a2[0], b1[0], b2[0]) else 1
        pts = sorted([a1, a2], key=lambda p: p[axis])
        qts = sorted([b1, b2], key=lambda p: p[axis])
        lo = max(pts[0], qts[0], key=lambda p: p[axis])
        hi = min(pts[1], qts[1], key=lambda p: p[axis])
        if lo[axis] > hi[axis]:
            return "none", []
        if lo == hi:
            return "point", [lo]
        return "overlap", [lo, hi]
    if ((d1 > 0) != (d2 > 0) or 0 in (d1, d2)) and (
        (d3 > 0) != (d4 > 0) or 0 in (d3, d4)
    ):
        # candidate intersection; handle endpoint touches exactly
        for p, (s1, s2) in (
            (a1, (b1, b2)),
            (a2, (b1, b2)),
            (b1, (a1, a2)),
            (b2, (a1, a2)),
        ):
            if _on_segment(p, s1, s2):
                return "point", [p]
        if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
            # proper crossing: solve a1 + s (a2 - a1) = b1 + t (b2 - b1)
            ax, ay = a2[0] - a1[0], a2[1] - a1[1]
            bx, by = b2[0] - b1[0], b2[1] - b1[1]
            den = ax * by - ay * bx
            s = ((b1[0] - a1[0]) * by - (b1[1] - a1[1]) * bx) / den
            p = (a1[0] + s * ax, a1[1] + s * ay)
            return "point", [p]
    return "none", []


@dataclass(frozen=True)
class PlanarDiagram:
    """Exact coordinates and y-monotone polylines for every cover relation."""

    poset: Poset
    points: dict[int, Point]
    curves: dict[tuple[int, int], tuple[Point, ...]]

    @staticmethod
    def straight_line(poset: Poset, coords: dict[int, tuple]) -> "PlanarDiagram":
        points = {i: pt(*coords[i]) for i in range(poset.n)}
        curves = {
            (a, b): (points[a], points[b]) for a, b in poset.cover_relations()
        }
        return PlanarDiagram(poset, points, curves)

    def x(self, v: int) -> Fraction:
        return self.points[v][0]

    def y(self, v: int) -> Fraction:
        return self.points[v][1]

    def mirror(self) -> "PlanarDiagram":
        """Negate all x coordinates (an involution swapping left and right)."""
        points = {v: (-p[0], p[1]) for v, p in self.points.items()}
        curves = {
            e: tuple((-q[0], q[1]) for q in poly) for e, poly in self.curves.items()
        }
        return PlanarDiagram(self.poset, points, curves)

    def y_order_extension(self) -> tuple[int, ...]:
        """Elements by increasing y; a linear extension in a valid diagram."""
        return tuple(sorted(range(self.poset.n), key=lambda v: self.points[v][1]))

    def segments(self, edge: tuple[int, int]) -> list[tuple[Point, Point]]:
        poly = self.curves[edge]
        return [(poly[i], poly[i + 1]) for i in range(len(poly) - 1)]

    def curve_x_at(self, edge: tuple[int, int], level: Fraction) -> Fraction:
        """x where the edge's polyline crosses the horizontal line y = level.

        The polyline is strictly y-increasing, so the crossing is unique;
        the level must lie strictly between the endpoint y's.
        """
        poly = self.curves[edge]
        for q in poly:
            if q[1] == level:
                return q[0]
        for i in range(len(poly) - 1):
            (x1, y1), (x2, y2) = poly[i], poly[i + 1]
            if y1 < level < y2:
                return x1 + (x2 - x1) * (level - y1) / (y2 - y1)
        raise ValueError(f"edge {edge} does not span level {level}")


def validate_diagram(d: PlanarDiagram) -> list[str]:
    """All PlanarDiagram invariants via exact tests; [] means valid."""
    violations: list[str] = []
    p = d.poset
    for v in range(p.n):
        if v not in d.points:
            violations.append(f"element {v} has no point")
    if violations:
        return violations
    ys: dict[Fraction, int] = {}
    for v in range(p.n):
        y = d.y(v)
        if y in ys:
            violations.append(f"elements {ys[y]} and {v} share y-coordinate {y}")
        else:
            ys[y] = v
    covers = set(p.cover_relations())
    drawn = set(d.curves)
    for e in sorted(covers - drawn):
        violations.append(f"cover {e} has no curve")
    for e in sorted(drawn - covers):
        violations.append(f"curve {e} is not a cover relation")
    for e in sorted(drawn & covers):
        u, v = e
        poly = d.curves[e]
        if len(poly) < 2:
            violations.append(f"curve {e} has fewer than two points")
            continue
        if poly[0] != d.points[u]:
            violations.append(f"curve {e} does not start at element {u}")
        if poly[-1] != d.points[v]:
            violations.append(f"curve {e} does not end at element {v}")
        for i in range(len(poly) - 1):
            if not poly[i][1] < poly[i + 1][1]:
                violations.append(f"curve {e} is not strictly y-increasing")
                break
    # elements in the interior of curves
    elem_at: dict[Point, int] = {d.points[v]: v for v in range(p.n)}
    for e in sorted(drawn & covers):
        u, v = e
        for w in range(p.n):
            if w in (u, v):
                continue
            q = d.points[w]
            for s1, s2 in d.segments(e):
                if _on_segment(q, s1, s2):
                    violations.append(f"element {w} lies on curve {e}")
                    break
    # pairwise curve intersections
    edges = sorted(drawn & covers)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            e1, e2 = edges[i], edges[j]
            shared = set(e1) & set(e2)
            allowed = {d.points[w] for w in shared}
            for s1, s2 in d.segments(e1):
                for t1, t2 in d.segments(e2):
                    kind, ipts = segment_intersections(s1, s2, t1, t2)
                    if kind == "overlap":
                        violations.append(f"curves {e1} and {e2} overlap")
                    elif kind == "point" and ipts[0] not in allowed:
                        violations.append(
                            f"curves {e1} and {e2} cross at {ipts[0]}"
                        )
    return violations


# ---------------------------------------------------------------------------
# walks, line crossings, sides


@dataclass(frozen=True)
class LineCrossings:
    """x-coordinates where walks through `source` cross the line y = level."""

    source: int
    level: Fraction
    direction: str  # "up" | "down"
    xs: tuple[Fraction, ...]


ReachFilter = Optional[tuple[str, object]]  # ("level", y) | ("element", id)


def line_crossings(
    d: PlanarDiagram,
    source: int,
    level: Fraction,
    direction: str,
    reach: ReachFilter = None,
) -> LineCrossings:
    """All crossing x's of walks through `source` at the given level.

    Upward: edges (u, v) with source <= u and y(u) < level < y(v); the
    optional reach filter keeps only walks extendable to a target:
    ("level", Z): some w >= v is drawn above Z; ("element", t): v <= t.
    Downward is dual.
    """
    p = d.poset
    level = Fraction(level)
    xs: list[Fraction] = []
    for e in p.cover_relations():
        u, v = e
        if d.y(u) < level < d.y(v):
            if direction == "up":
                if not p.leq(source, u):
                    continue
                if reach is not None:
                    kind, target = reach
                    if kind == "level":
                        z = Fraction(target)  # type: ignore[arg-type]
                        if not any(d.y(w) > z for w in _bits(p.up[v])):
                            continue
                    elif kind == "element":
                        if not p.leq(v, target):  # type: ignore[arg-type]
                            continue
                    else:
                        raise ValueError(f"unknown reach filter {kind!r}")
            elif direction == "down":
                if not p.leq(v, source):
                    continue
                if reach is not None:
                    kind, target = reach
                    if kind == "level":
                        z = Fraction(target)  # type: ignore[arg-type]
                        if not any(d.y(w) < z for w in _bits(p.down[u])):
                            continue
                    elif kind == "element":
                        if not p.leq(target, u):  # type: ignore[arg-type]
                            continue
                    else:
                        raise ValueError(f"unknown reach filter {kind!r}")
            else:
                raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
            xs.append(d.curve_x_at(e, level))
    return LineCrossings(source, level, direction, tuple(sorted(xs)))


def sees_line(d: PlanarDiagram, p_el: int, q_el: int) -> bool:
    """True iff some walk containing p intersects the horizontal q-line."""
    if p_el == q_el:
        raise ValueError("p and q must differ")
    pp = d.poset
    if pp.leq(p_el, q_el) or pp.leq(q_el, p_el):
        return True  # the witnessing path touches the line at q
    direction = "up" if d.y(q_el) > d.y(p_el) else "down"
    return bool(line_crossings(d, p_el, d.y(q_el), direction).xs)


def side_seen(d: PlanarDiagram, p_el: int, q_el: int) -> str:
    """Which side(s) of q the walks through p hit the q-line on.

    Returns "left", "right", "both" or "none"; crossings exactly at q would
    mean an element interior to a curve and raise DegenerateWalk.
    """
    direction = "up" if d.y(q_el) > d.y(p_el) else "down"
    xs = line_crossings(d, p_el, d.y(q_el), direction).xs
    xq = d.x(q_el)
    if any(x == xq for x in xs):
        raise DegenerateWalk(f"walk through {p_el} passes through element {q_el}")
    left = any(x < xq for x in xs)
    right = any(x > xq for x in xs)
    if left and right:
        return "both"
    if left:
        return "left"
    if right:
        return "right"
    return "none"


# ---------------------------------------------------------------------------
# pair classification (easy layers + left/right dichotomy)


@dataclass(frozen=True)
class PairClassification:
    """The layered split of Inc(A, B) used by the partition pipeline.

    i1_above: a drawn above b (reversed by the y-order extension)
    i2_blind_a: a does not see the b-line
    i2_blind_b: b does not see the a-line (and a sees the b-line)
    i3_left: a sees only the left side of b, b only the right side of a
    i3_right: a sees only the right side of b, b only the left side of a
    """

    i1_above: tuple[IncPair, ...]
    i2_blind_a: tuple[IncPair, ...]
    i2_blind_b: tuple[IncPair, ...]
    i3_left: tuple[IncPair, ...]
    i3_right: tuple[IncPair, ...]

    def all_pairs(self) -> list[IncPair]:
        out: list[IncPair] = []
        for part in (
            self.i1_above,
            self.i2_blind_a,
            self.i2_blind_b,
            self.i3_left,
            self.i3_right,
        ):
            out.extend(part)
        return sorted(out)


def classify_pairs(
    d: PlanarDiagram, aa: Iterable[int], bb: Iterable[int]
) -> PairClassification:
    """Split Inc(A, B) into the three easy layers and the two I3 sides.

    Every surviving pair must land in exactly one of the dichotomy cases;
    anything else falsifies the left/right claim and means the drawing or
    the implementation is broken.
    """
    p = d.poset
    aa = sorted(set(aa))
    bb = sorted(set(bb))
    mins = p.min_elements()
    maxs = p.max_elements()
    if not set(aa) <= mins:
        raise PreconditionFailed("A must consist of minimal elements")
    if not set(bb) <= maxs:
        raise PreconditionFailed("B must consist of maximal elements")
    i1: list[IncPair] = []
    i2a: list[IncPair] = []
    i2b: list[IncPair] = []
    i3l: list[IncPair] = []
    i3r: list[IncPair] = []
    for a, b in inc_between(p, aa, bb):
        if d.y(a) > d.y(b):
            i1.append((a, b))
        elif not sees_line(d, a, b):
            i2a.append((a, b))
        elif not sees_line(d, b, a):
            i2b.append((a, b))
        else:
            sa = side_seen(d, a, b)
            sb = side_seen(d, b, a)
            if sa == "left" and sb == "right":
                i3l.append((a, b))
            elif sa == "right" and sb == "left":
                i3r.append((a, b))
            else:
                raise FalsifiedClaim(
                    f"pair ({a}, {b}) breaks the left/right dichotomy: "
                    f"a sees {sa}, b sees {sb}",
                    evidence=(a, b, sa, sb),
                )
    return PairClassification(
        tuple(i1), tuple(i2a), tuple(i2b), tuple(i3l), tuple(i3r)
    )


# ---------------------------------------------------------------------------
# separators and dangerous pairs


@dataclass(frozen=True)
class SeparatorWitness:
    """A walk from the a-line (left of a) to the b-line (right of b) whose
    elements are all incomparable to both."""

    entry_edge: tuple[int, int]
    exit_edge: tuple[int, int]
    elements: tuple[int, ...]


def has_separator(d: PlanarDiagram, a: int, b: int) -> Optional[SeparatorWitness]:
    """Search the walk graph for a separator of the pair (a, b).

    Nodes are "mid" elements strictly between the two lines that are
    incomparable to both a and b, entered from edges crossing the a-line
    left of a; exits are edges crossing the b-line right of b.  A single
    edge crossing both lines correctly separates with no elements visited.
    """
    p = d.poset
    ya, yb = d.y(a), d.y(b)
    if not ya < yb:
        raise PreconditionFailed("separator needs a drawn below b")
    xa, xb = d.x(a), d.x(b)

    def crosses(e: tuple[int, int], level: Fraction) -> bool:
        u, v = e
        return d.y(u) < level < d.y(v)

    def exit_via(e: tuple[int, int]) -> bool:
        return crosses(e, yb) and d.curve_x_at(e, yb) > xb

    mid_ok = [
        w
        for w in range(p.n)
        if ya < d.y(w) < yb and p.incomparable(w, a) and p.incomparable(w, b)
    ]
    mid_set = set(mid_ok)
    covers = p.cover_relations()
    entries = [
        e for e in covers if crosses(e, ya) and d.curve_x_at(e, ya) < xa
    ]
    # BFS over elements; track how each element was first entered
    from collections import deque

    prev: dict[int, tuple[Optional[int], tuple[int, int]]] = {}
    queue: deque[int] = deque()
    for e in sorted(entries):
        u, v = e
        if exit_via(e):
            return SeparatorWitness(e, e, ())
        if v in mid_set and v not in prev:
            prev[v] = (None, e)
            queue.append(v)
    while queue:
        w = queue.popleft()
        for e in covers:
            if e[0] != w:
                continue
            v = e[1]
            if exit_via(e):
                # reconstruct element path
                path = [w]
                while prev[path[-1]][0] is not None:
                    path.append(prev[path[-1]][0])
                path.reverse()
                entry = prev[path[0]][1]
                return SeparatorWitness(entry, e, tuple(path))
            if v in mid_set and v not in prev:
                prev[v] = (w, e)
                queue.append(v)
    return None


def is_dangerous(d: PlanarDiagram, x0: int, a: int, b: int) -> bool:
    """(a, b) is dangerous iff a is drawn below x0 and sees its left side."""
    if a == x0:
        return False
    if d.y(a) >= d.y(x0):
        return False
    return side_seen(d, a, x0) in ("left", "both")


# ---------------------------------------------------------------------------
# special pairs of strict alternating cycles


def special_pair_index(d: PlanarDiagram, cycle: StrictAltCycle) -> Optional[int]:
    """Smallest 0-based j such that (a_j, b_j) is special in the cycle.

    Requires the cycle rotated so b_0 is drawn topmost.  (a_j, b_j) is
    special iff a_{j+1} is drawn above a_j, b_{j+1} below b_j, and
    a_{j+1} lies right of every walk a_j -> b_{j+1} and left of every walk
    from a_j to the b_j-line, tested via filtered line crossings at the
    a_{j+1}-line.
    """
    k = cycle.size
    prs = cycle.pairs
    top = max(range(k), key=lambda i: d.y(prs[i][1]))
    if top != 0:
        raise PreconditionFailed("cycle must be rotated so b_0 is topmost")
    for j in range(k):
        aj, bj = prs[j]
        aj1, bj1 = prs[(j + 1) % k]
        if not (d.y(aj) < d.y(aj1) and d.y(bj1) < d.y(bj)):
            continue
        level = d.y(aj1)
        to_bj1 = line_crossings(d, aj, level, "up", ("element", bj1)).xs
        to_bj_line = line_crossings(d, aj, level, "up", ("level", d.y(bj))).xs
        if not to_bj1 or not to_bj_line:
            continue
        xa = d.x(aj1)
        if any(x == xa for x in to_bj1 + to_bj_line):
            raise DegenerateWalk(
                f"qualifying walk passes through a_{j + 1} itself"
            )
        if max(to_bj1) < xa < min(to_bj_line):
            return j
    return None


# ---------------------------------------------------------------------------
# the partition pipeline (dim(Min(P), B) <= 6h + 3)


@dataclass(frozen=True)
class PartitionCaps:
    cycle_size_cap: Optional[int] = None  # None = |J|
    node_budget: int = 1_000_000


@dataclass(frozen=True)
class NamedClass:
    name: str
    pairs: tuple[IncPair, ...]
    witness: tuple[int, ...]


@dataclass(frozen=True)
class PartitionReport:
    """The reversible classes partitioning Inc(Min(P), B).

    Classes carry names: the three easy layers, then per side (right = the
    drawing as-is, left = mirrored) and per family (sep / no-sep x
    dangerous / non-dangerous) one class per level of the auxiliary digraph.
    """

    x0: int
    b_set: tuple[int, ...]
    height: int
    classification: PairClassification
    classes: tuple[NamedClass, ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def bound(self) -> int:
        return 6 * self.height + 3

    def verify(self, p: Poset) -> None:
        """Disjointness, exact union, reversibility, and the 6h+3 bound."""
        seen: set[IncPair] = set()
        for cl in self.classes:
            for pr in cl.pairs:
                if pr in seen:
                    raise FalsifiedClaim(f"pair {pr} appears in two classes")
                seen.add(pr)
        want = set(inc_between(p, p.min_elements(), self.b_set))
        if seen != want:
            raise FalsifiedClaim("classes do not cover Inc(Min, B) exactly")
        for cl in self.classes:
            if not p.is_linear_extension(cl.witness):
                raise FalsifiedClaim(f"class {cl.name}: witness not an extension")
            if not reverses_all(cl.witness, cl.pairs):
                raise FalsifiedClaim(f"class {cl.name}: witness fails to reverse")
            if not is_reversible(p, cl.pairs):
                raise FalsifiedClaim(f"class {cl.name} is not reversible")
        if self.class_count > self.bound:
            raise FalsifiedClaim(
                f"{self.class_count} classes exceed 6h+3 = {self.bound}"
            )


def _family_level_classes(
    d: PlanarDiagram,
    family: Sequence[IncPair],
    side: str,
    fam_name: str,
    height: int,
    caps: PartitionCaps,
) -> list[tuple[str, tuple[IncPair, ...]]]:
    """Color one family by longest-path level of the auxiliary digraph G."""
    p = d.poset
    fam = sorted(family)
    if not fam:
        return []
    index = {pr: i for i, pr in enumerate(fam)}
    succ: dict[int, set[int]] = {i: set() for i in range(len(fam))}
    pred: dict[int, set[int]] = {i: set() for i in range(len(fam))}
    cap = caps.cycle_size_cap if caps.cycle_size_cap is not None else len(fam)
    for cyc in enumerate_strict_cycles(p, fam, cap, caps.node_budget):
        k = cyc.size
        top = max(range(k), key=lambda i: d.y(cyc.pairs[i][1]))
        rot = cyc.rotate_to(top)
        j = special_pair_index(d, rot)
        if j is None:
            raise FalsifiedClaim(
                f"strict cycle in {side}/{fam_name} has no special pair",
                evidence=rot,
            )
        u = index[rot.pairs[j]]
        v = index[rot.pairs[(j + 1) % k]]
        if u != v:
            succ[u].add(v)
            pred[v].add(u)
    # the edge (a,b) -> (a',b') forces a drawn below a', so G must be acyclic
    level = {i: 0 for i in range(len(fam))}
    order: list[int] = []
    indeg = {i: len(pred[i]) for i in range(len(fam))}
    ready = sorted(i for i in indeg if indeg[i] == 0)
    while ready:
        u = ready.pop(0)
        order.append(u)
        for v in sorted(succ[u]):
            level[v] = max(level[v], level[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
        ready.sort()
    if len(order) != len(fam):
        raise FalsifiedClaim(
            f"auxiliary digraph for {side}/{fam_name} has a directed cycle"
        )
    nlevels = max(level.values()) + 1
    if nlevels > height:
        raise FalsifiedClaim(
            f"{side}/{fam_name}: {nlevels} levels exceed the height {height}"
        )
    out = []
    for t in range(nlevels):
        pairs = tuple(sorted(fam[i] for i in range(len(fam)) if level[i] == t))
        if pairs:
            out.append((f"{side}/{fam_name}/level{t}", pairs))
    return out


def partition_minmax_below(
    d: PlanarDiagram,
    b_set: Iterable[int],
    x0: int,
    caps: PartitionCaps = PartitionCaps(),
) -> PartitionReport:
    """Partition Inc(Min(P), B) into at most 6h+3 reversible classes.

    Requires x0 <= b for every b in B and a valid drawing.  Follows the
    constructive pipeline: easy layers, the left/right split (the left side
    processed in the mirrored drawing), the separator/dangerous refinement
    (no dangerous separated pairs may exist), and per family a level
    coloring of the special-pair digraph built from all strict cycles.
    Every emitted class is re-verified reversible.
    """
    p = d.poset
    b_list = sorted(set(b_set))
    maxs = p.max_elements()
    if not set(b_list) <= maxs:
        raise PreconditionFailed("B must consist of maximal elements")
    for b in b_list:
        if not p.leq(x0, b):
            raise PreconditionFailed(f"x0 = {x0} is not below b = {b}")
    bad = validate_diagram(d)
    if bad:
        raise PreconditionFailed(f"invalid diagram: {bad[0]} (+{len(bad) - 1} more)")
    # normalize x0 to a minimal element below it
    if x0 not in p.min_elements():
        x0 = min(_bits(p.down[x0]), key=lambda v: (v not in p.min_elements(), v))
        assert x0 in p.min_elements()
    height = p.height()
    cls = classify_pairs(d, p.min_elements(), b_list)
    named: list[NamedClass] = []
    if cls.i1_above:
        w = d.y_order_extension()
        if not p.is_linear_extension(w) or not reverses_all(w, cls.i1_above):
            raise FalsifiedClaim("y-order fails to reverse the a-above-b layer")
        named.append(NamedClass("layer/a-above-b", cls.i1_above, w))
    for name, pairs in (
        ("layer/a-blind", cls.i2_blind_a),
        ("layer/b-blind", cls.i2_blind_b),
    ):
        if pairs:
            if not is_reversible(p, pairs):
                raise FalsifiedClaim(f"{name} layer is not reversible")
            named.append(NamedClass(name, pairs, reversing_extension(p, pairs)))
    sides = (
        ("right", d, cls.i3_right),
        ("left", d.mirror(), cls.i3_left),
    )
    for side, dd, j_all in sides:
        if not j_all:
            continue
        sep_nd: list[IncPair] = []
        nosep_nd: list[IncPair] = []
        nosep_d: list[IncPair] = []
        for a, b in sorted(j_all):
            sep = has_separator(dd, a, b) is not None
            dang = is_dangerous(dd, x0, a, b)
            if sep and dang:
                raise FalsifiedClaim(
                    f"dangerous separated pair ({a}, {b}) on the {side} side",
                    evidence=(a, b),
                )
            if sep:
                sep_nd.append((a, b))
            elif dang:
                nosep_d.append((a, b))
            else:
                nosep_nd.append((a, b))
        for fam_name, fam in (
            ("sep", sep_nd),
            ("nosep-safe", nosep_nd),
            ("nosep-dangerous", nosep_d),
        ):
            for name, pairs in _family_level_classes(
                dd, fam, side, fam_name, height, caps
            ):
                if not is_reversible(p, pairs):
                    raise FalsifiedClaim(f"class {name} is not reversible")
                named.append(NamedClass(name, pairs, reversing_extension(p, pairs)))
    report = PartitionReport(x0, tuple(b_list), height, cls, tuple(named))
    report.verify(p)
    return report
