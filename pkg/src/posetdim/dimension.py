"""Incomparable pairs, reversibility, and exact dimension.

Reversibility of a pair set I follows Trotter-Moore: I is reversible iff the
digraph "P plus the reversed pairs" is acyclic, equivalently iff the pair
arc-digraph (arc (x,y) -> (x',y') iff x <= y' in P) restricted to I has no
directed cycle.  A globally shortest directed cycle of that digraph has no
chords, so it is automatically a *strict* alternating cycle and serves as
the irreversibility certificate.

dim(I) is computed by iterative deepening on the class count with a
backtracking assignment: pairs in descending arc-degree order (fail-first),
per-class incremental cycle detection, and new-class symmetry breaking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import FalsifiedClaim, PairNotIncomparable, ResourceLimit
from .poset import Poset, _bits

IncPair = tuple[int, int]


# ---------------------------------------------------------------------------
# incomparable pairs


def incomparable_pairs(p: Poset) -> list[IncPair]:
    """All ordered incomparable pairs of p, sorted."""
    out = []
    for x in range(p.n):
        for y in range(x + 1, p.n):
            if p.incomparable(x, y):
                out.append((x, y))
                out.append((y, x))
    out.sort()
    return out


def inc_between(p: Poset, aa: Iterable[int], bb: Iterable[int]) -> list[IncPair]:
    """Ordered incomparable pairs (a, b) with a in aa, b in bb."""
    bb = sorted(set(bb))
    out = []
    for a in sorted(set(aa)):
        for b in bb:
            if a != b and p.incomparable(a, b):
                out.append((a, b))
    return out


def _check_pairs(p: Poset, pairs: Sequence[IncPair]) -> None:
    for x, y in pairs:
        if not p.incomparable(x, y):
            raise PairNotIncomparable(f"({x}, {y}) is comparable", pair=(x, y))


# ---------------------------------------------------------------------------
# strict alternating cycles


@dataclass(frozen=True)
class StrictAltCycle:
    """Pairs (x_1,y_1)..(x_k,y_k) with x_i <= y_j in P iff j = i+1 (cyclic)."""

    pairs: tuple[IncPair, ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def verify(self, p: Poset) -> None:
        """Check all strict-cycle invariants; raise FalsifiedClaim on failure."""
        k = len(self.pairs)
        if k < 2:
            raise FalsifiedClaim("alternating cycle needs size >= 2", evidence=self)
        xs = [x for x, _ in self.pairs]
        ys = [y for _, y in self.pairs]
        if len(set(xs)) != k or len(set(ys)) != k:
            raise FalsifiedClaim("cycle endpoints not distinct", evidence=self)
        for i in range(k):
            for j in range(k):
                expected = j == (i + 1) % k
                if p.leq(xs[i], ys[j]) != expected:
                    raise FalsifiedClaim(
                        f"x_{i} <= y_{j} is {not expected}, breaking strictness",
                        evidence=self,
                    )

    def rotate_to(self, idx: int) -> "StrictAltCycle":
        return StrictAltCycle(self.pairs[idx:] + self.pairs[:idx])

    def canonical(self) -> "StrictAltCycle":
        best = min(range(len(self.pairs)), key=lambda i: self.pairs[i])
        return self.rotate_to(best)


def _arc_digraph(p: Poset, pairs: Sequence[IncPair]) -> tuple[list[int], list[int]]:
    """Out/in adjacency bitmasks of the pair arc-digraph on `pairs`."""
    k = len(pairs)
    out = [0] * k
    inn = [0] * k
    for i, (x, _) in enumerate(pairs):
        for j, (_, y2) in enumerate(pairs):
            if i != j and p.leq(x, y2):
                out[i] |= 1 << j
                inn[j] |= 1 << i
    return out, inn


def find_strict_alternating_cycle(
    p: Poset, pairs: Sequence[IncPair]
) -> Optional[StrictAltCycle]:
    """A shortest strict alternating cycle within `pairs`, or None.

    Ties are broken by the canonical rotation's pair sequence, so the result
    is deterministic for a fixed input order-insensitively.
    """
    _check_pairs(p, pairs)
    pairs = sorted(set(pairs))
    k = len(pairs)
    if k < 2:
        return None
    out, _ = _arc_digraph(p, pairs)
    best: Optional[tuple[int, tuple[IncPair, ...]]] = None
    for s in range(k):
        # BFS from s; stop as soon as s is re-reached (shortest through s).
        dist = {s: 0}
        parent: dict[int, int] = {}
        frontier = [s]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for v in _bits(out[u]):
                    if v == s:
                        found = u
                        break
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                if found is not None:
                    break
            frontier = nxt
        if found is None:
            continue
        path = [found]
        while path[-1] != s:
            path.append(parent[path[-1]])
        path.reverse()  # s .. found
        cyc = StrictAltCycle(tuple(pairs[i] for i in path)).canonical()
        key = (len(cyc.pairs), cyc.pairs)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    cyc = StrictAltCycle(best[1])
    cyc.verify(p)
    return cyc


def is_reversible(p: Poset, pairs: Sequence[IncPair]) -> bool:
    """True iff one linear extension of p reverses every pair in `pairs`."""
    return find_strict_alternating_cycle(p, pairs) is None


def reversing_extension(p: Poset, pairs: Sequence[IncPair]) -> tuple[int, ...]:
    """A linear extension of p reversing every pair in `pairs`.

    Smallest-id-first topological order of P plus the arcs y -> x for each
    (x, y); raises FalsifiedClaim if the set is not reversible.
    """
    n = p.n
    pred = [p.down[i] & ~(1 << i) for i in range(n)]
    for x, y in pairs:
        pred[x] |= 1 << y  # y must precede x
    placed_mask = 0
    order: list[int] = []
    for _ in range(n):
        pick = -1
        for i in range(n):
            if placed_mask & (1 << i):
                continue
            if pred[i] & ~placed_mask:
                continue
            pick = i
            break
        if pick < 0:
            raise FalsifiedClaim("pair set is not reversible", evidence=tuple(pairs))
        order.append(pick)
        placed_mask |= 1 << pick
    return tuple(order)


def reverses_all(order: Sequence[int], pairs: Iterable[IncPair]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[y] < pos[x] for x, y in pairs)


def enumerate_strict_cycles(
    p: Poset,
    pairs: Sequence[IncPair],
    size_cap: Optional[int] = None,
    node_budget: int = 1_000_000,
):
    """Yield every strict alternating cycle within `pairs`, once per rotation.

    A strict cycle is exactly an induced (chordless) directed cycle of the
    pair arc-digraph; the DFS grows chord-free paths whose smallest node
    comes first, so each cycle appears exactly once, canonically rotated.
    Exceeding `node_budget` expansions raises ResourceLimit (callers must
    never base soundness on unexamined cycles).
    """
    _check_pairs(p, pairs)
    pairs = sorted(set(pairs))
    k = len(pairs)
    cap = k if size_cap is None else min(size_cap, k)
    if k < 2 or cap < 2:
        return
    out, inn = _arc_digraph(p, pairs)
    state = {"nodes": 0}

    def extend(start: int, path: list[int], path_mask: int):
        last = path[-1]
        for v in _bits(out[last] & ~path_mask):
            if v < start:
                continue
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                raise ResourceLimit(
                    f"cycle enumeration exceeded {node_budget} expansions"
                )
            # chord-freeness: the only arc into v from the path is last -> v,
            # and the only arc out of v into the path may be the closing
            # arc v -> start (which, if present, forces closing now).
            if inn[v] & path_mask & ~(1 << last):
                continue
            v_out = out[v] & path_mask
            closes = bool(v_out & (1 << start))
            if v_out & ~(1 << start):
                continue
            path.append(v)
            if closes:
                yield StrictAltCycle(tuple(pairs[i] for i in path))
            elif len(path) < cap:
                yield from extend(start, path, path_mask | (1 << v))
            path.pop()

    for s in range(k):
        yield from extend(s, [s], 1 << s)


# ---------------------------------------------------------------------------
# dim(I): minimum partition into reversible classes


@dataclass(frozen=True)
class IncPairPartition:
    """A partition of a pair set into reversible classes with witnesses."""

    value: int
    classes: tuple[tuple[IncPair, ...], ...]
    witnesses: tuple[tuple[int, ...], ...]

    def verify(self, p: Poset, pairs: Sequence[IncPair]) -> None:
        want = sorted(set(pairs))
        got = sorted(pr for cl in self.classes for pr in cl)
        if got != want:
            raise FalsifiedClaim("classes do not partition the pair set")
        seen: set[IncPair] = set()
        for cl in self.classes:
            for pr in cl:
                if pr in seen:
                    raise FalsifiedClaim(f"pair {pr} in two classes")
                seen.add(pr)
        if len(self.witnesses) != len(self.classes):
            raise FalsifiedClaim("one witness per class required")
        for cl, w in zip(self.classes, self.witnesses):
            if not p.is_linear_extension(w):
                raise FalsifiedClaim("witness is not a linear extension")
            if not reverses_all(w, cl):
                raise FalsifiedClaim("witness fails to reverse its class")
        if self.classes and self.value != len(self.classes):
            raise FalsifiedClaim("value disagrees with class count")


def _greedy_conflict_clique(out: list[int], inn: list[int]) -> list[int]:
    """Greedy clique in the mutual-arc (2-cycle) conflict graph."""
    k = len(out)
    conf = [out[i] & inn[i] for i in range(k)]
    order = sorted(range(k), key=lambda i: (-bin(conf[i]).count("1"), i))
    clique: list[int] = []
    for v in order:
        if all(conf[v] & (1 << u) for u in clique):
            clique.append(v)
    return clique


def dim_of_set(
    p: Poset,
    pairs: Sequence[IncPair],
    node_budget: int = 5_000_000,
) -> tuple[int, IncPairPartition]:
    """Least number of reversible classes partitioning `pairs`.

    Returns (d, certificate); the convention dim(emptyset) = 1 yields
    (1, empty partition).  Raises ResourceLimit with the bounds proven so
    far when `node_budget` assignment steps are exhausted.
    """
    _check_pairs(p, pairs)
    pairs = sorted(set(pairs))
    k = len(pairs)
    if k == 0:
        return 1, IncPairPartition(1, (), ())
    out, inn = _arc_digraph(p, pairs)
    degree = [bin(out[i]).count("1") + bin(inn[i]).count("1") for i in range(k)]
    order = sorted(range(k), key=lambda i: (-degree[i], i))
    clique = _greedy_conflict_clique(out, inn)
    lower = max(1, len(clique))

    nodes = 0

    def creates_cycle(v: int, mask: int) -> bool:
        """Would adding node v to the acyclic set `mask` close a cycle?"""
        succ = out[v] & mask
        if not succ or not (inn[v] & mask):
            return False
        seen = 0
        frontier = succ
        vbit = 1 << v
        while frontier:
            if frontier & vbit:
                return True
            seen |= frontier
            nxt = 0
            for u in _bits(frontier):
                nxt |= out[u] & (mask | vbit)
            frontier = nxt & ~seen
        return False

    assignment = [0] * k

    def search(t: int, idx: int, masks: list[int], used: int) -> bool:
        nonlocal nodes
        if idx == k:
            return True
        v = order[idx]
        limit = min(used + 1, t)
        for c in range(limit):
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimit(
                    f"dimension search exceeded {node_budget} nodes",
                    lower_bound=lower,
                    upper_bound=None,
                )
            if not creates_cycle(v, masks[c]):
                masks[c] |= 1 << v
                assignment[v] = c
                if search(t, idx + 1, masks, max(used, c + 1)):
                    return True
                masks[c] &= ~(1 << v)
        return False

    t = lower
    while True:
        if search(t, 0, [0] * t, 0):
            break
        t += 1
    classes: list[list[IncPair]] = [[] for _ in range(t)]
    used = max(assignment) + 1
    for v in range(k):
        classes[assignment[v]].append(pairs[v])
    classes = [sorted(cl) for cl in classes[:used] if cl]
    witnesses = tuple(reversing_extension(p, cl) for cl in classes)
    part = IncPairPartition(len(classes), tuple(map(tuple, classes)), witnesses)
    part.verify(p, pairs)
    return len(classes), part


# ---------------------------------------------------------------------------
# dimension of a poset, min-max variants, brute-force oracle


def dimension(p: Poset, node_budget: int = 5_000_000) -> tuple[int, list[tuple[int, ...]]]:
    """Exact dim(p) together with a realizer of that size.

    The realizer's intersection is post-checked to equal the relation
    bit-for-bit; a mismatch raises FalsifiedClaim (it would be a bug).
    """
    inc = incomparable_pairs(p)
    d, part = dim_of_set(p, inc, node_budget)
    if part.classes:
        realizer = [list(w) for w in part.witnesses]
    else:
        realizer = [sorted(range(p.n), key=lambda i: (bin(p.down[i]).count("1"), i))]
        if not p.is_linear_extension(realizer[0]):
            # fall back to exhaustive first extension; tiny posets only
            realizer = [list(next(p.linear_extensions()))]
    check_realizer(p, realizer)
    return d, [tuple(w) for w in realizer]


def check_realizer(p: Poset, realizer: Sequence[Sequence[int]]) -> None:
    """Verify intersection of the extensions equals the order exactly."""
    for w in realizer:
        if not p.is_linear_extension(w):
            raise FalsifiedClaim("realizer member is not a linear extension")
    pos = [{v: i for i, v in enumerate(w)} for w in realizer]
    for a in range(p.n):
        for b in range(p.n):
            if a == b:
                continue
            in_all = all(q[a] < q[b] for q in pos)
            if in_all != p.lt(a, b):
                raise FalsifiedClaim(
                    f"realizer intersection disagrees with order at ({a}, {b})"
                )


def minmax_dimension(p: Poset, node_budget: int = 5_000_000) -> tuple[int, IncPairPartition]:
    """dim(Min(p), Max(p))."""
    return dim_of_set(p, inc_between(p, p.min_elements(), p.max_elements()), node_budget)


def dim_ab(
    p: Poset, aa: Iterable[int], bb: Iterable[int], node_budget: int = 5_000_000
) -> tuple[int, IncPairPartition]:
    """dim(A, B) = dim of the ordered incomparable pairs in A x B."""
    return dim_of_set(p, inc_between(p, aa, bb), node_budget)


def brute_force_dimension(
    p: Poset,
    max_elements: int = 8,
    override: bool = False,
    extension_budget: int = 2_000_000,
) -> int:
    """Exact dimension by exhausting linear extensions and set-covering.

    Independent of dim_of_set: enumerates every linear extension, records
    which incomparable pairs each reverses, and finds the least number of
    extensions reversing all of them (equivalently: intersecting to p).
    Only for small posets; lift the size guard with override=True.
    """
    if p.n > max_elements and not override:
        raise ResourceLimit(
            f"brute force limited to {max_elements} elements (n={p.n}); "
            "pass override=True to force"
        )
    inc = incomparable_pairs(p)
    if not inc:
        return 1
    index = {pr: i for i, pr in enumerate(inc)}
    full = (1 << len(inc)) - 1
    masks: set[int] = set()
    for ext in p.linear_extensions(extension_budget):
        pos = {v: i for i, v in enumerate(ext)}
        m = 0
        for pr, i in index.items():
            x, y = pr
            if pos[y] < pos[x]:
                m |= 1 << i
        masks.add(m)
    # drop dominated masks
    ms = sorted(masks, key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in ms:
        if not any(m & ~k2 == 0 for k2 in kept):
            kept.append(m)
    cover_of = [sorted(i for i, m in enumerate(kept) if m & (1 << b)) for b in range(len(inc))]

    def covers_exist(t: int) -> bool:
        def rec(covered: int, depth: int) -> bool:
            if covered == full:
                return True
            if depth == t:
                return False
            # most-constrained uncovered pair
            best_b, best = -1, None
            for b in range(len(inc)):
                if covered & (1 << b):
                    continue
                cands = cover_of[b]
                if best is None or len(cands) < len(best):
                    best_b, best = b, cands
            if not best:
                return False
            for mi in best:
                if rec(covered | kept[mi], depth + 1):
                    return True
            return False

        return rec(0, 0)

    t = 1
    while not covers_exist(t):
        t += 1
    return t


# ---------------------------------------------------------------------------
# min-max reduction (degree-1 lifting)


@dataclass(frozen=True)
class MinMaxReduction:
    """P embedded in Q so that dim(P) <= dim(Min(Q), Max(Q)).

    Q keeps p's ids; every non-minimal x gains a fresh minimal `min_lift[x]`
    below it and every non-maximal x a fresh maximal `max_lift[x]` above it,
    all attached by single cover edges (degree-1 in the cover graph).
    """

    poset: Poset
    base_n: int
    min_lift: dict[int, int]
    max_lift: dict[int, int]

    def lift_pair(self, x: int, y: int) -> IncPair:
        """The Inc(Min(Q), Max(Q)) pair carrying the incomparable (x, y)."""
        a = self.min_lift.get(x, x)
        b = self.max_lift.get(y, y)
        return (a, b)


def minmax_reduction(p: Poset) -> MinMaxReduction:
    """Attach degree-1 minimal/maximal lifts to all non-extreme elements.

    Only non-minimal elements get a lower lift (and dually), so no chain
    lengthens and height(Q) = height(p).
    """
    mins = p.min_elements()
    maxs = p.max_elements()
    rel = list(p.cover_relations())
    labels = dict(p.labels)
    nid = p.n
    min_lift: dict[int, int] = {}
    max_lift: dict[int, int] = {}
    for x in range(p.n):
        if x not in mins:
            min_lift[x] = nid
            rel.append((nid, x))
            labels[nid] = f"m{p.label(x)}"
            nid += 1
    for x in range(p.n):
        if x not in maxs:
            max_lift[x] = nid
            rel.append((x, nid))
            labels[nid] = f"M{p.label(x)}"
            nid += 1
    q = Poset.from_relations(nid, rel, labels=labels)
    return MinMaxReduction(q, p.n, min_lift, max_lift)


# ---------------------------------------------------------------------------
# induced standard examples


def contains_standard_example(
    p: Poset,
    k: int,
    within: Optional[tuple[Iterable[int], Iterable[int]]] = None,
    node_budget: int = 2_000_000,
) -> Optional[tuple[list[int], list[int]]]:
    """Search an induced S_k: a_1..a_k, b_1..b_k with a_i < b_j iff i != j.

    Each S_k slot is an incomparable pair (a_i, b_i); two slots are
    compatible iff a < b', a' < b, a || a', b || b'.  An induced S_k is a
    k-clique of the compatibility graph, found by backtracking with degree
    pruning.  `within` optionally restricts slots to A x B.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if within is None:
        cand = incomparable_pairs(p)
    else:
        cand = inc_between(p, within[0], within[1])
    # degree pruning needs strict up/down counts
    cand = [
        (a, b)
        for a, b in cand
        if bin(p.up[a]).count("1") - 1 >= k - 1 and bin(p.down[b]).count("1") - 1 >= k - 1
    ]
    m = len(cand)
    if m < k:
        return None

    def compatible(i: int, j: int) -> bool:
        a, b = cand[i]
        a2, b2 = cand[j]
        return (
            p.lt(a, b2)
            and p.lt(a2, b)
            and p.incomparable(a, a2)
            and p.incomparable(b, b2)
        )

    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if compatible(i, j):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    # iterative degree-(k-1) pruning
    alive = (1 << m) - 1
    changed = True
    while changed:
        changed = False
        for i in _bits(alive):
            if bin(adj[i] & alive).count("1") < k - 1:
                alive &= ~(1 << i)
                changed = True
    if bin(alive).count("1") < k:
        return None

    nodes = 0
    stack: list[int] = []

    def grow(pool: int) -> bool:
        nonlocal nodes
        if len(stack) == k:
            return True
        if len(stack) + bin(pool).count("1") < k:
            return False
        for v in _bits(pool):
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimit(
                    f"standard-example search exceeded {node_budget} nodes"
                )
            stack.append(v)
            if grow(pool & adj[v] & ~((1 << (v + 1)) - 1)):
                return True
            stack.pop()
        return False

    if not grow(alive):
        return None
    slots = [cand[i] for i in stack]
    slots.sort()
    a_list = [a for a, _ in slots]
    b_list = [b for _, b in slots]
    verify_standard_example(p, a_list, b_list)
    return a_list, b_list


def verify_standard_example(p: Poset, a_list: Sequence[int], b_list: Sequence[int]) -> None:
    """Assert the listed elements induce S_k; raise FalsifiedClaim otherwise."""
    k = len(a_list)
    if k != len(b_list) or k < 2:
        raise FalsifiedClaim("witness size mismatch")
    elems = list(a_list) + list(b_list)
    if len(set(elems)) != 2 * k:
        raise FalsifiedClaim("witness elements not distinct")
    for i in range(k):
        for j in range(k):
            if i == j:
                if not p.incomparable(a_list[i], b_list[i]):
                    raise FalsifiedClaim(f"a_{i} and b_{i} comparable")
            elif not p.lt(a_list[i], b_list[j]):
                raise FalsifiedClaim(f"a_{i} < b_{j} missing")
    for i in range(k):
        for j in range(i + 1, k):
            if not p.incomparable(a_list[i], a_list[j]):
                raise FalsifiedClaim("a-side not an antichain")
            if not p.incomparable(b_list[i], b_list[j]):
                raise FalsifiedClaim("b-side not an antichain")
