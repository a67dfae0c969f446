"""Immutable undirected graph plus the connectivity primitives the algorithms use.

Vertices are 0..n-1. Every operation is a pure function with deterministic
output: neighbor lists are ascending, components are ordered by their smallest
vertex, and tie-breaks always go to the smallest edge or vertex id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (
    DisconnectedInput,
    DisconnectedSubset,
    EmptySubset,
    MalformedEdge,
    OverlappingSets,
    SubsetTooSmall,
)

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph, immutable after construction."""

    n: int
    edges: tuple[tuple[int, int], ...]  # normalized (u < v), sorted
    adj: tuple[tuple[int, ...], ...]  # ascending neighbor lists

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a Graph; rejects malformed edges and disconnected input."""
    if n < 1:
        raise MalformedEdge(f"vertex count must be >= 1, got {n}")
    seen: set[tuple[int, int]] = set()
    adj: list[list[int]] = [[] for _ in range(n)]
    for edge in edge_list:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedEdge(f"edge {edge!r} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise MalformedEdge(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise MalformedEdge(f"duplicate edge {key!r}")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    g = Graph(
        n=n,
        edges=tuple(sorted(seen)),
        adj=tuple(tuple(sorted(neighbors)) for neighbors in adj),
    )
    if n > 1:
        reached = _bfs_reach(g, 0, g.vertices)
        if len(reached) != n:
            missing = sorted(g.vertices - reached)
            raise DisconnectedInput(f"graph is disconnected; e.g. vertex {missing[0]} unreachable from 0")
    return g


def _bfs_reach(g: Graph, start: int, allowed: frozenset[int]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_connected_subset(g: Graph, s: Iterable[int]) -> bool:
    """True iff the induced subgraph G[s] is connected; s must be nonempty."""
    s = frozenset(s)
    if not s:
        raise EmptySubset("connectivity of the empty set is undefined")
    return len(_bfs_reach(g, min(s), s)) == len(s)


def components_of_subset(g: Graph, s: Iterable[int]) -> list[VertexSet]:
    """Maximal connected pieces of G[s], ordered by smallest contained vertex."""
    s = frozenset(s)
    remaining = set(s)
    out: list[VertexSet] = []
    for v in sorted(s):
        if v in remaining:
            comp = _bfs_reach(g, v, s)
            out.append(frozenset(comp))
            remaining -= comp
    return out


def parts_adjacent(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff some edge crosses between the disjoint sets a and b."""
    a, b = frozenset(a), frozenset(b)
    if a & b:
        raise OverlappingSets(f"sets share vertices {sorted(a & b)}")
    if len(b) < len(a):
        a, b = b, a
    return any(y in b for x in a for y in g.adj[x])


def boundary_vertices(
    g: Graph, from_set: Iterable[int], toward: Iterable[int]
) -> list[tuple[int, int]]:
    """All crossing edges (u in from_set, v in toward), ascending by (u, v)."""
    from_set, toward = frozenset(from_set), frozenset(toward)
    if from_set & toward:
        raise OverlappingSets(f"sets share vertices {sorted(from_set & toward)}")
    out = [(u, v) for u in from_set for v in g.adj[u] if v in toward]
    out.sort()
    return out


def spanning_tree(g: Graph) -> list[tuple[int, int]]:
    """BFS spanning tree from vertex 0 (neighbors ascending); n-1 normalized edges."""
    return _spanning_tree_of(g, g.vertices)


def _spanning_tree_of(g: Graph, s: frozenset[int]) -> list[tuple[int, int]]:
    """BFS tree of G[s] from min(s), in discovery order; raises if G[s] is disconnected."""
    root = min(s)
    seen = {root}
    queue = deque([root])
    tree: list[tuple[int, int]] = []
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y in s and y not in seen:
                seen.add(y)
                tree.append((x, y) if x < y else (y, x))
                queue.append(y)
    if len(seen) != len(s):
        raise DisconnectedSubset(f"induced subgraph on {len(s)} vertices is disconnected")
    return tree


def most_balanced_tree_cut(g: Graph, s: Iterable[int]) -> tuple[VertexSet, VertexSet]:
    """Split G[s] by removing the spanning-tree edge that minimizes the larger side.

    Returns (smaller side, larger side); ties by smallest contained vertex.
    Deterministic: tree edges are tried in ascending order and the first best wins.
    """
    s = frozenset(s)
    if len(s) < 2:
        raise SubsetTooSmall(f"cannot split a set of {len(s)} vertices")
    tree = _spanning_tree_of(g, s)

    tree_adj: dict[int, list[int]] = {v: [] for v in s}
    for u, v in tree:
        tree_adj[u].append(v)
        tree_adj[v].append(u)
    # Root the tree and take subtree sizes, so each cut is measured in O(1).
    root = min(s)
    parent: dict[int, int] = {root: root}
    order: list[int] = [root]
    for x in order:
        for y in tree_adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    size = {v: 1 for v in s}
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]

    best_edge: tuple[int, int] | None = None
    best_large = len(s)
    for u, v in sorted(tree):
        child = v if parent[v] == u else u
        large = max(size[child], len(s) - size[child])
        if large < best_large:
            best_large = large
            best_edge = (u, v)
    assert best_edge is not None
    u, v = best_edge
    child = v if parent[v] == u else u
    side = frozenset(_collect_subtree(tree_adj, child, parent))
    other = s - side
    if (len(side), min(side)) <= (len(other), min(other)):
        return side, other
    return other, side


def _collect_subtree(tree_adj: dict[int, list[int]], child: int, parent: dict[int, int]) -> set[int]:
    out = {child}
    stack = [child]
    while stack:
        x = stack.pop()
        for y in tree_adj[x]:
            if y != parent[x] and y not in out and parent[y] == x:
                out.add(y)
                stack.append(y)
    return out


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: header "n m", then m lines "u v".

    Blank lines and lines starting with '#' are ignored.
    """
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise MalformedEdge("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise MalformedEdge(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MalformedEdge(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise MalformedEdge(f"header declares {m} edges but {len(lines) - 1} edge lines follow")
    edges = []
    for line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise MalformedEdge(f"edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError as exc:
            raise MalformedEdge(f"non-integer edge line {line!r}") from exc
    return build_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list; deterministic (edges ascending)."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
