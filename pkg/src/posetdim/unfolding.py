"""Unfolding sequences, zig-zag parent trees, and cores.

Unfolding a connected poset from a base element x0 in Min u Max produces the
alternating partition A0, B1, A1, B2, ... of minimal and maximal elements;
alpha/beta indices locate every element between consecutive layers, and the
parent rule turns the cover graph into a spanning tree of zig-zag paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dimension import IncPairPartition, dim_ab
from .errors import BadBase, FalsifiedClaim, NotConnected, PreconditionFailed
from .poset import Poset, SubposetView, _bits


@dataclass
class UnfoldingSequence:
    """The sets A_0, B_1, A_1, ..., with alpha/beta maps and parents.

    a_sets[i] = A_i (A_0 may be empty); b_sets[j] = B_j for j >= 1
    (b_sets[0] is a padding empty set so indices match the math).
    """

    poset: Poset
    base: int
    a_sets: list[frozenset[int]]
    b_sets: list[frozenset[int]]
    alpha: dict[int, int]
    beta: dict[int, int]
    parent: dict[int, int] = field(default_factory=dict)

    def layers(self) -> list[tuple[str, int, frozenset[int]]]:
        """Non-empty prefix as (kind, index, set) triples: A0, B1, A1, ..."""
        out: list[tuple[str, int, frozenset[int]]] = []
        hi = max(len(self.a_sets), len(self.b_sets))
        for i in range(hi):
            if i < len(self.a_sets):
                out.append(("A", i, self.a_sets[i]))
            if i + 1 < len(self.b_sets):
                out.append(("B", i + 1, self.b_sets[i + 1]))
        while out and not out[-1][2]:
            out.pop()
        return out

    def a(self, i: int) -> frozenset[int]:
        return self.a_sets[i] if 0 <= i < len(self.a_sets) else frozenset()

    def b(self, j: int) -> frozenset[int]:
        return self.b_sets[j] if 1 <= j < len(self.b_sets) else frozenset()


def unfold(p: Poset, x0: int) -> UnfoldingSequence:
    """Unfold connected p (>= 2 elements) from x0 in Min(p) u Max(p)."""
    if p.n < 2:
        raise NotConnected("unfolding needs at least two elements")
    if not p.is_connected():
        raise NotConnected("poset is not connected")
    mins = p.min_elements()
    maxs = p.max_elements()
    if x0 in mins:
        a0 = frozenset({x0})
        b1 = frozenset(b for b in maxs if p.leq(x0, b))
    elif x0 in maxs:
        a0 = frozenset()
        b1 = frozenset({x0})
    else:
        raise BadBase(f"{x0} is neither minimal nor maximal")
    a_sets = [a0]
    b_sets = [frozenset(), b1]
    used_a = set(a0)
    used_b = set(b1)
    i = 1
    while True:
        ai = frozenset(
            a for a in mins if a not in used_a and any(p.leq(a, b) for b in b_sets[i])
        )
        a_sets.append(ai)
        used_a |= ai
        bi1 = frozenset(
            b for b in maxs if b not in used_b and any(p.leq(a, b) for a in ai)
        )
        b_sets.append(bi1)
        used_b |= bi1
        if not ai and not bi1:
            break
        i += 1
    if used_a != mins or used_b != maxs:
        raise NotConnected("unfolding did not exhaust Min/Max (disconnected?)")
    while len(a_sets) > 1 and not a_sets[-1] and not b_sets[-1]:
        a_sets.pop()
        b_sets.pop()
    alpha: dict[int, int] = {}
    beta: dict[int, int] = {}
    for x in range(p.n):
        for i, ai in enumerate(a_sets):
            if ai and p.down[x] & _mask(ai):
                alpha[x] = i
                break
        for j in range(1, len(b_sets)):
            if b_sets[j] and p.up[x] & _mask(b_sets[j]):
                beta[x] = j
                break
    u = UnfoldingSequence(p, x0, a_sets, b_sets, alpha, beta)
    _check_unfolding_invariants(u)
    return u


def _mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def _check_unfolding_invariants(u: UnfoldingSequence) -> None:
    p = u.poset
    for x in range(p.n):
        assert x in u.alpha and x in u.beta, f"element {x} missed by unfolding"
        s_a = {
            i for i, ai in enumerate(u.a_sets) if ai and p.down[x] & _mask(ai)
        }
        s_b = {
            j for j in range(1, len(u.b_sets)) if u.b_sets[j] and p.up[x] & _mask(u.b_sets[j])
        }
        # downset/upset membership property: Up(A_i) hits only B_i, B_{i+1};
        # Up(A_0) only B_1; dually for D(B_i).
        for i in s_a:
            if i == 0:
                assert s_b == {1}, f"Up(A_0) element {x} meets B_{s_b}"
            else:
                assert s_b and s_b <= {i, i + 1}, (
                    f"element {x}: alpha-layer {i} sees B-layers {s_b}"
                )
        for j in s_b:
            assert s_a and s_a <= {j - 1, j}, (
                f"element {x}: beta-layer {j} sees A-layers {s_a}"
            )
        if x != u.base:
            assert u.beta[x] - u.alpha[x] in (0, 1), f"beta-alpha gap at {x}"


def assign_parents(u: UnfoldingSequence) -> dict[int, int]:
    """Attach each x != x0 to a parent along a cover edge.

    beta(x) = alpha(x) = i: parent is the smallest-id upper cover of x inside
    D(B_i); beta(x) = alpha(x)+1: smallest-id lower cover inside Up(A_alpha).
    The parent edges form a spanning tree of the cover graph (checked).
    """
    p = u.poset
    covers_up: list[list[int]] = [[] for _ in range(p.n)]
    covers_dn: list[list[int]] = [[] for _ in range(p.n)]
    for a, b in p.cover_relations():
        covers_up[a].append(b)
        covers_dn[b].append(a)
    parent: dict[int, int] = {}
    for x in range(p.n):
        if x == u.base:
            continue
        i, j = u.alpha[x], u.beta[x]
        if i == j:
            dmask = _mask(u.b_sets[j]) if j < len(u.b_sets) else 0
            cands = [y for y in covers_up[x] if p.up[y] & dmask]
        else:
            amask = _mask(u.a_sets[i]) if i < len(u.a_sets) else 0
            cands = [y for y in covers_dn[x] if p.down[y] & amask]
        if not cands:
            raise FalsifiedClaim(f"no admissible parent for element {x}", evidence=u)
        parent[x] = min(cands)
    for x, y in parent.items():
        assert u.alpha[y] <= u.alpha[x] and u.beta[y] <= u.beta[x], (
            f"alpha/beta not monotone along parent edge {x}->{y}"
        )
    _check_spanning_tree(u, parent)
    u.parent = parent
    return parent


def _check_spanning_tree(u: UnfoldingSequence, parent: dict[int, int]) -> None:
    p = u.poset
    edges = {tuple(sorted((x, y))) for x, y in parent.items()}
    if len(edges) != p.n - 1:
        raise FalsifiedClaim("parent edges do not count n-1", evidence=parent)
    cover_set = set(map(tuple, p.cover_relations()))
    for x, y in parent.items():
        e = (x, y) if (x, y) in cover_set else (y, x)
        if e not in cover_set:
            raise FalsifiedClaim(f"parent edge {x}-{y} is not a cover", evidence=parent)
    seen = {u.base}
    for x in range(p.n):
        path = []
        v = x
        while v not in seen:
            path.append(v)
            if v not in parent:
                raise FalsifiedClaim(f"element {v} has no path to base", evidence=parent)
            v = parent[v]
            if v in path:
                raise FalsifiedClaim("parent edges contain a cycle", evidence=parent)
        seen.update(path)


def zigzag_path(u: UnfoldingSequence, x: int) -> list[int]:
    """The tree path from the base to x (inclusive).

    Where x lies in Up(A_{i-1}) n Up(A_i) n D(B_i), the path's trace in
    Up(A_i) must be a chain topped by x, and its trace in D(B_i) must have a
    unique minimal element; both are asserted.
    """
    if not u.parent:
        assign_parents(u)
    p = u.poset
    path = [x]
    while path[-1] != u.base:
        path.append(u.parent[path[-1]])
    path.reverse()
    for i in range(1, len(u.a_sets)):
        up_prev = p.down[x] & _mask(u.a_sets[i - 1]) if u.a_sets[i - 1] else 0
        up_i = p.down[x] & _mask(u.a_sets[i]) if u.a_sets[i] else 0
        dn_i = (
            p.up[x] & _mask(u.b_sets[i]) if i < len(u.b_sets) and u.b_sets[i] else 0
        )
        if not (up_prev and up_i and dn_i):
            continue
        amask_i = _mask(u.a_sets[i])
        amask_prev = _mask(u.a_sets[i - 1])
        bmask_i = _mask(u.b_sets[i])
        trace_up = [z for z in path if p.down[z] & amask_i]
        for s in range(len(trace_up)):
            for t2 in range(s + 1, len(trace_up)):
                if p.incomparable(trace_up[s], trace_up[t2]):
                    raise FalsifiedClaim(
                        f"zig-zag trace in Up(A_{i}) is not a chain", evidence=(x, path)
                    )
        if trace_up:
            top = max(trace_up, key=lambda z: bin(p.down[z]).count("1"))
            if not all(p.leq(z, x) for z in trace_up) or not p.leq(top, x):
                raise FalsifiedClaim(
                    f"x is not the maximum of its Up(A_{i}) trace", evidence=(x, path)
                )
            if any(not (p.down[z] & amask_prev) for z in trace_up):
                raise FalsifiedClaim(
                    f"Up(A_{i}) trace leaves Up(A_{i-1})", evidence=(x, path)
                )
        trace_dn = [z for z in path if p.up[z] & bmask_i]
        mins = [
            z
            for z in trace_dn
            if not any(p.lt(w, z) for w in trace_dn if w != z)
        ]
        if len(mins) != 1:
            raise FalsifiedClaim(
                f"zig-zag trace in D(B_{i}) has {len(mins)} minimal elements",
                evidence=(x, path),
            )
    return path


# ---------------------------------------------------------------------------
# unfolding lemma and cores


def verify_unfolding_lemma(
    p: Poset, x0: int, node_budget: int = 5_000_000
) -> tuple[int, int, int]:
    """Find (i, j) with dim(A_i, B_j) >= dim(Min, Max)/2, j in {i, i+1}.

    Returns (i, j, dim_ij) for the smallest such i (j = i checked before
    j = i+1).  Raises PreconditionFailed when dim(Min, Max) < 2 and
    FalsifiedClaim (with the unfolding attached) when no witness exists.
    """
    d, _ = dim_ab(p, p.min_elements(), p.max_elements(), node_budget)
    if d < 2:
        raise PreconditionFailed(f"min-max dimension is {d} < 2")
    u = unfold(p, x0)
    hi = max(len(u.a_sets), len(u.b_sets))
    for i in range(hi):
        for j in (i, i + 1):
            if j < 1:
                continue
            ai, bj = u.a(i), u.b(j)
            if not ai or not bj:
                continue
            dij, _ = dim_ab(p, ai, bj, node_budget)
            if 2 * dij >= d:
                return i, j, dij
    raise FalsifiedClaim(
        "unfolding lemma witness not found (this contradicts the lemma)",
        evidence=u,
    )


@dataclass(frozen=True)
class Core:
    """A connected convex subposet keeping >= half the min-max dimension."""

    members: tuple[int, ...]
    source_index: int
    facing: str  # "left" (j = i) or "right" (j = i+1)
    poset: Poset  # densely reindexed copy
    id_map: tuple[int, ...]  # new id -> parent id
    minmax_dim: int
    parent_minmax_dim: int


def find_core(p: Poset, x0: int, node_budget: int = 5_000_000) -> Core:
    """A core of p with respect to x0 (requires min-max dimension >= 6)."""
    d, _ = dim_ab(p, p.min_elements(), p.max_elements(), node_budget)
    if d < 6:
        raise PreconditionFailed(f"min-max dimension {d} < 6")
    i, j, dij = verify_unfolding_lemma(p, x0, node_budget)
    u = unfold(p, x0)
    hull = p.convex_hull(sorted(u.a(i) | u.b(j)))
    sub, ids = hull.to_poset()
    comps = sub.components()
    a_set, b_set = u.a(i), u.b(j)
    chosen: Optional[tuple[list[int], int]] = None
    for comp in comps:
        view = SubposetView(sub, comp)
        comp_poset, comp_ids = view.to_poset()
        mins_parent = {ids[comp_ids[x]] for x in comp_poset.min_elements()}
        maxs_parent = {ids[comp_ids[x]] for x in comp_poset.max_elements()}
        if not (mins_parent <= a_set and maxs_parent <= b_set):
            continue
        dc, _ = dim_ab(
            comp_poset, comp_poset.min_elements(), comp_poset.max_elements(), node_budget
        )
        if dc == dij:
            chosen = (comp, dc)
            break
    if chosen is None:
        raise FalsifiedClaim(
            "no component of the convex hull attains dim(A_i, B_j)",
            evidence=(i, j, dij),
        )
    comp, dc = chosen
    members = tuple(sorted(ids[x] for x in comp))
    view = SubposetView(p, members)
    if not view.is_convex():
        raise FalsifiedClaim("core is not convex", evidence=members)
    core_poset, core_ids = view.to_poset()
    # element set must equal Up(Min(core)) n D(Max(core)) within p
    mins_parent = {core_ids[x] for x in core_poset.min_elements()}
    maxs_parent = {core_ids[x] for x in core_poset.max_elements()}
    expect = p.upset_mask(mins_parent) & p.downset_mask(maxs_parent)
    if expect != _mask(members):
        raise FalsifiedClaim("core is not Up(Min) n D(Max)", evidence=members)
    facing = "left" if j == i else "right"
    if facing == "left":
        if not maxs_parent <= u.b(i):
            raise FalsifiedClaim("left-facing core has Max outside B_i")
    else:
        if not maxs_parent <= u.b(i + 1):
            raise FalsifiedClaim("right-facing core has Max outside B_{i+1}")
    if 2 * dc < d:
        raise FalsifiedClaim("core loses more than half the dimension")
    return Core(members, i, facing, core_poset, tuple(core_ids), dc, d)
