"""Finite posets on dense integer ids with bitset relation storage.

The order relation is kept as one upset bitmask per element (`up[i]` has bit
j set iff i <= j), which makes closure, upset/downset queries and cover
extraction cheap word operations at desk scale (n up to a few hundred).
Posets are immutable after construction.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import CyclicRelation, InvalidId, NotConnected, ResourceLimit


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite poset on elements 0..n-1.

    `up[i]` / `down[i]` are reflexive upset / downset bitmasks. An optional
    `labels` map attaches display names (e.g. "a3") to ids; it never affects
    semantics.
    """

    __slots__ = ("n", "up", "down", "labels", "_covers")

    def __init__(self, n: int, up: Sequence[int], labels: Optional[dict[int, str]] = None):
        self.n = n
        self.up = tuple(up)
        down = [0] * n
        for i in range(n):
            m = self.up[i]
            for j in _bits(m):
                down[j] |= 1 << i
        self.down = tuple(down)
        self.labels = dict(labels) if labels else {}
        self._covers: Optional[tuple[tuple[int, int], ...]] = None
        self._check_axioms()

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_relations(
        n: int,
        rel: Iterable[tuple[int, int]],
        mode: str = "covers",
        labels: Optional[dict[int, str]] = None,
    ) -> "Poset":
        """Build a poset as the reflexive-transitive closure of `rel`.

        `mode` ("covers" or "full") documents the intent of `rel`; the
        closure is always taken, so both modes accept any generating set.
        Raises InvalidId for out-of-range endpoints and CyclicRelation when
        the closure would violate antisymmetry.
        """
        if mode not in ("covers", "full"):
            raise ValueError(f"mode must be 'covers' or 'full', got {mode!r}")
        if n < 0:
            raise InvalidId(f"element count must be >= 0, got {n}")
        up = [1 << i for i in range(n)]
        for a, b in rel:
            if not (0 <= a < n) or not (0 <= b < n):
                raise InvalidId(f"relation ({a}, {b}) outside 0..{n - 1}")
            up[a] |= 1 << b
        # Warshall over bitmask rows: after the pass, up[i] is the full upset.
        for j in range(n):
            bit = 1 << j
            uj = up[j]
            for i in range(n):
                if up[i] & bit:
                    up[i] |= uj
        for i in range(n):
            others = up[i] & ~(1 << i)
            for j in _bits(others):
                if up[j] & (1 << i):
                    raise CyclicRelation(
                        f"elements {i} and {j} are mutually comparable", cycle=[i, j]
                    )
        return Poset(n, up, labels)

    def _check_axioms(self) -> None:
        for i in range(self.n):
            if not self.up[i] & (1 << i):
                raise CyclicRelation(f"relation not reflexive at {i}")
            for j in _bits(self.up[i]):
                if j != i and self.up[j] & (1 << i):
                    raise CyclicRelation(
                        f"elements {i} and {j} are mutually comparable", cycle=[i, j]
                    )
                if self.up[j] & ~self.up[i]:
                    raise CyclicRelation(f"relation not transitive at {i} <= {j}")

    # -- elementary queries ------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] & (1 << b))

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def incomparable(self, a: int, b: int) -> bool:
        return not self.leq(a, b) and not self.leq(b, a)

    def label(self, i: int) -> str:
        return self.labels.get(i, str(i))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.n, self.up))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.cover_relations())})"

    # -- derived structure -------------------------------------------------

    def cover_relations(self) -> tuple[tuple[int, int], ...]:
        """All pairs (a, b) with a < b and no c strictly between."""
        if self._covers is None:
            covers = []
            for a in range(self.n):
                strict_up = self.up[a] & ~(1 << a)
                for b in _bits(strict_up):
                    between = strict_up & self.down[b] & ~(1 << b)
                    if not between:
                        covers.append((a, b))
            self._covers = tuple(sorted(covers))
        return self._covers

    def min_elements(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if self.down[i] == (1 << i))

    def max_elements(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if self.up[i] == (1 << i))

    def height(self) -> int:
        """Maximum number of elements in a chain."""
        if self.n == 0:
            return 0
        order = sorted(range(self.n), key=lambda i: bin(self.down[i]).count("1"))
        h = [1] * self.n
        for i in order:
            below = self.down[i] & ~(1 << i)
            if below:
                h[i] = 1 + max(h[j] for j in _bits(below))
        return max(h)

    def width(self) -> int:
        """Maximum antichain size, via Dilworth and bipartite matching.

        A minimum chain cover has size n - M where M is a maximum matching
        of the strict-order split graph (left copy i -- right copy j iff
        i < j); by Dilworth that equals the maximum antichain size.
        """
        if self.n == 0:
            return 0
        n = self.n
        succ = [self.up[i] & ~(1 << i) for i in range(n)]
        match_right: list[Optional[int]] = [None] * n

        def try_augment(i: int, seen: list[bool]) -> bool:
            for j in _bits(succ[i]):
                if not seen[j]:
                    seen[j] = True
                    if match_right[j] is None or try_augment(match_right[j], seen):
                        match_right[j] = i
                        return True
            return False

        matching = 0
        for i in range(n):
            if try_augment(i, [False] * n):
                matching += 1
        return n - matching

    def upset(self, xs: Iterable[int]) -> frozenset[int]:
        m = 0
        for x in xs:
            m |= self.up[x]
        return frozenset(_bits(m))

    def downset(self, xs: Iterable[int]) -> frozenset[int]:
        m = 0
        for x in xs:
            m |= self.down[x]
        return frozenset(_bits(m))

    def upset_mask(self, xs: Iterable[int]) -> int:
        m = 0
        for x in xs:
            m |= self.up[x]
        return m

    def downset_mask(self, xs: Iterable[int]) -> int:
        m = 0
        for x in xs:
            m |= self.down[x]
        return m

    def convex_hull(self, xs: Iterable[int]) -> "SubposetView":
        """X together with every element between two members of X."""
        xs = list(xs)
        if not xs:
            raise ValueError("convex_hull of an empty set")
        xmask = 0
        for x in xs:
            xmask |= 1 << x
        members = xmask | (self.upset_mask(xs) & self.downset_mask(xs))
        return SubposetView(self, sorted(_bits(members)))

    def dual(self) -> "Poset":
        """Same elements with the relation reversed."""
        return Poset(self.n, self.down, self.labels)

    def cover_adjacency(self) -> list[set[int]]:
        """Undirected cover-graph adjacency sets."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.cover_relations():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        """Connectivity of the undirected cover graph."""
        if self.n == 0:
            return True
        adj = self.cover_adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[list[int]]:
        """Connected components of the cover graph, each sorted, ordered by
        smallest member."""
        adj = self.cover_adjacency()
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    # -- linear extensions --------------------------------------------------

    def linear_extensions(self, budget: int = 1_000_000) -> Iterator[tuple[int, ...]]:
        """Yield every linear extension as a tuple (smallest first).

        Extensions are produced in lexicographic order of the id sequence.
        Raises ResourceLimit when more than `budget` extensions would be
        yielded.
        """
        n = self.n
        if n == 0:
            yield ()
            return
        strict_down = [self.down[i] & ~(1 << i) for i in range(n)]
        out: list[int] = []
        produced = 0

        def rec(placed_mask: int):
            nonlocal produced
            if len(out) == n:
                produced += 1
                if produced > budget:
                    raise ResourceLimit(
                        f"more than {budget} linear extensions", lower_bound=budget
                    )
                yield tuple(out)
                return
            for i in range(n):
                bit = 1 << i
                if placed_mask & bit:
                    continue
                if strict_down[i] & ~placed_mask:
                    continue
                out.append(i)
                yield from rec(placed_mask | bit)
                out.pop()

        yield from rec(0)

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        """True iff `order` lists all elements once, respecting the relation."""
        if len(order) != self.n or set(order) != set(range(self.n)):
            return False
        pos = {v: k for k, v in enumerate(order)}
        for a in range(self.n):
            for b in _bits(self.up[a] & ~(1 << a)):
                if pos[a] > pos[b]:
                    return False
        return True


class SubposetView(object):
    """An induced subposet: a member subset of a parent with the inherited
    relation. Member ids are the parent's ids; `to_poset` reindexes densely.
    """

    __slots__ = ("parent", "members", "member_mask")

    def __init__(self, parent: Poset, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        m = 0
        for x in self.members:
            if not (0 <= x < parent.n):
                raise InvalidId(f"member {x} outside parent")
            m |= 1 << x
        self.member_mask = m

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.member_mask & (1 << x))

    def leq(self, a: int, b: int) -> bool:
        if a not in self or b not in self:
            raise InvalidId(f"{a} or {b} not in view")
        return self.parent.leq(a, b)

    def is_convex(self) -> bool:
        """No x < y < z in the parent with x, z inside and y outside."""
        p = self.parent
        for y in range(p.n):
            if self.member_mask & (1 << y):
                continue
            below = p.down[y] & self.member_mask & ~(1 << y)
            above = p.up[y] & self.member_mask & ~(1 << y)
            if below and above:
                return False
        return True

    def min_elements(self) -> frozenset[int]:
        p = self.parent
        return frozenset(
            x for x in self.members if not (p.down[x] & self.member_mask & ~(1 << x))
        )

    def max_elements(self) -> frozenset[int]:
        p = self.parent
        return frozenset(
            x for x in self.members if not (p.up[x] & self.member_mask & ~(1 << x))
        )

    def to_poset(self) -> tuple[Poset, list[int]]:
        """Densely reindexed copy plus the new-id -> parent-id map."""
        ids = list(self.members)
        index = {x: k for k, x in enumerate(ids)}
        n = len(ids)
        up = [0] * n
        for k, x in enumerate(ids):
            m = self.parent.up[x] & self.member_mask
            acc = 0
            for y in _bits(m):
                acc |= 1 << index[y]
            up[k] = acc
        labels = {index[x]: self.parent.labels[x] for x in ids if x in self.parent.labels}
        return Poset(n, up, labels), ids


def antichain(n: int) -> Poset:
    """n pairwise-incomparable elements."""
    return Poset.from_relations(n, [])


def chain(n: int) -> Poset:
    """The chain 0 < 1 < ... < n-1."""
    return Poset.from_relations(n, [(i, i + 1) for i in range(n - 1)])


def disjoint_union(ps: Sequence[Poset]) -> tuple[Poset, list[list[int]]]:
    """Disjoint union; returns the poset and per-part id maps."""
    offset = 0
    rel = []
    maps = []
    labels = {}
    for p in ps:
        maps.append([offset + i for i in range(p.n)])
        for a, b in p.cover_relations():
            rel.append((a + offset, b + offset))
        for i, lab in p.labels.items():
            labels[offset + i] = lab
        offset += p.n
    return Poset.from_relations(offset, rel, labels=labels), maps
