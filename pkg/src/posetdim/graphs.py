"""Cover graphs, planarity testing, and tree-decomposition verification.

Planarity uses networkx's left-right test for the yes side (returning its
rotation system); the no side extracts a Kuratowski subdivision by greedy
edge deletion, which terminates in an edge-minimal non-planar subgraph --
necessarily a subdivision of K5 or K33.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx

from .poset import Poset


@dataclass(frozen=True)
class CoverGraph:
    """Undirected cover graph of a poset: vertices 0..n-1, edges = covers."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def cover_graph(p: Poset) -> CoverGraph:
    return CoverGraph(p.n, tuple(tuple(sorted(e)) for e in p.cover_relations()))


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    # rotation system: vertex -> neighbors in clockwise embedding order
    embedding: Optional[dict[int, tuple[int, ...]]]
    # on non-planar input: ("K5" | "K33", edge list of the subdivision)
    witness_kind: Optional[str]
    witness_edges: Optional[tuple[tuple[int, int], ...]]


def _euler_ok(n: int, m: int) -> bool:
    return n < 3 or m <= 3 * n - 6


def is_planar(g: CoverGraph | nx.Graph) -> PlanarityResult:
    """Planarity with a certificate either way.

    Yes: a rotation system (vertex -> cyclic neighbor order).  No: the edge
    set of a K5 or K33 subdivision contained in the graph.
    """
    gx = g.to_networkx() if isinstance(g, CoverGraph) else g
    ok, emb = nx.check_planarity(gx, counterexample=False)
    if ok:
        emb.check_structure()
        rotation = {
            v: tuple(emb.neighbors_cw_order(v)) if emb.degree(v) else ()
            for v in gx.nodes
        }
        return PlanarityResult(True, rotation, None, None)
    kind, edges = _kuratowski_witness(gx)
    return PlanarityResult(False, None, kind, edges)


def _kuratowski_witness(gx: nx.Graph) -> tuple[str, tuple[tuple[int, int], ...]]:
    """Edge-minimal non-planar subgraph = a Kuratowski subdivision."""
    h = gx.copy()
    changed = True
    while changed:
        changed = False
        for e in sorted(h.edges):
            h.remove_edge(*e)
            if nx.check_planarity(h, counterexample=False)[0]:
                h.add_edge(*e)
            else:
                changed = True
        # strip isolated / degree-<=1 vertices; they cannot be in the witness
        prune = [v for v in h.nodes if h.degree(v) <= 1]
        while prune:
            h.remove_nodes_from(prune)
            prune = [v for v in h.nodes if h.degree(v) <= 1]
    branch = sorted(v for v in h.nodes if h.degree(v) >= 3)
    degs = sorted(h.degree(v) for v in branch)
    if len(branch) == 5 and degs == [4, 4, 4, 4, 4]:
        kind = "K5"
    elif len(branch) == 6 and degs == [3, 3, 3, 3, 3, 3]:
        kind = "K33"
    else:  # pragma: no cover - deletion loop guarantees one of the two
        kind = "K33"
    return kind, tuple(tuple(sorted(e)) for e in sorted(h.edges))


# ---------------------------------------------------------------------------
# tree decompositions


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree (nodes + edges) with one bag of graph vertices per node."""

    nodes: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...]
    bags: dict[int, frozenset[int]]

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def nodes_containing(self, v: int) -> list[int]:
        return [t for t in self.nodes if v in self.bags[t]]


def verify_tree_decomposition(
    g: CoverGraph, td: TreeDecomposition
) -> tuple[Optional[int], list[str]]:
    """Check tree shape, vertex subtree non-emptiness and connectivity, and
    edge coverage.  Returns (width, []) when valid, else (None, violations).
    """
    violations: list[str] = []
    nodes = list(td.nodes)
    node_set = set(nodes)
    if len(node_set) != len(nodes):
        violations.append("duplicate tree nodes")
    adj: dict[int, set[int]] = {t: set() for t in nodes}
    for a, b in td.tree_edges:
        if a not in node_set or b not in node_set:
            violations.append(f"tree edge ({a}, {b}) uses unknown node")
            continue
        adj[a].add(b)
        adj[b].add(a)
    if set(td.bags) != node_set:
        violations.append("bags do not match tree nodes")
        return None, violations
    # tree = connected and |E| = |V| - 1
    if nodes:
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(nodes):
            violations.append("tree is not connected")
        if len(td.tree_edges) != len(nodes) - 1:
            violations.append("edge count wrong for a tree")
    for v in range(g.n):
        holding = [t for t in nodes if v in td.bags[t]]
        if not holding:
            violations.append(f"vertex {v} in no bag")
            continue
        comp = {holding[0]}
        stack = [holding[0]]
        hold = set(holding)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in hold and w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != hold:
            violations.append(f"bag nodes of vertex {v} are not a subtree")
    for a, b in g.edges:
        if not any(a in td.bags[t] and b in td.bags[t] for t in nodes):
            violations.append(f"edge ({a}, {b}) not inside any bag")
    if violations:
        return None, violations
    return td.width(), []


def subtrees_intersect(td: TreeDecomposition, v: int, w: int) -> bool:
    """True iff some bag contains both v and w."""
    return any(v in td.bags[t] and w in td.bags[t] for t in td.nodes)
