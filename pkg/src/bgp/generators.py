"""Graph generators: analytic families, seeded random graphs, and the three
stall-case families used to exercise the tetrapartition certificates.

Every generator is deterministic in (family, n, seed). The case families
construct a double-star instance together with its canonical stalled
partition and verify at emission that the partition really stalls and
classifies as the requested case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidSpec
from .graph import Graph, build_graph
from .partition import Partition

FAMILIES = (
    "path",
    "cycle",
    "star",
    "caterpillar",
    "grid",
    "random_connected",
    "double_star_case1",
    "double_star_case2",
    "bi_star_case3",
)

CASE_FAMILIES = ("double_star_case1", "double_star_case2", "bi_star_case3")

DEFAULT_EXTRA_EDGE_P = 0.15


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int = 0
    p: float | None = None  # random_connected: extra-edge probability
    cross: int | None = None  # case families: number of cross edges


def generate(spec: GeneratorSpec) -> Graph:
    """Emit the graph for a spec; case families also self-verify their partition."""
    if spec.family not in FAMILIES:
        raise InvalidSpec(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise InvalidSpec(f"n must be >= 1, got {spec.n}")
    if spec.family in CASE_FAMILIES:
        return generate_with_partition(spec)[0]
    builder = {
        "path": _path,
        "cycle": _cycle,
        "star": _star,
        "caterpillar": _caterpillar,
        "grid": _grid,
        "random_connected": _random_connected,
    }[spec.family]
    return builder(spec)


def _path(spec: GeneratorSpec) -> Graph:
    return build_graph(spec.n, [(i, i + 1) for i in range(spec.n - 1)])


def _cycle(spec: GeneratorSpec) -> Graph:
    if spec.n < 3:
        raise InvalidSpec(f"cycles need n >= 3, got {spec.n}")
    edges = [(i, i + 1) for i in range(spec.n - 1)]
    edges.append((0, spec.n - 1))
    return build_graph(spec.n, edges)


def _star(spec: GeneratorSpec) -> Graph:
    return build_graph(spec.n, [(0, i) for i in range(1, spec.n)])


def _caterpillar(spec: GeneratorSpec) -> Graph:
    n = spec.n
    if n == 1:
        return build_graph(1, [])
    rng = random.Random(spec.seed)
    spine = max(2, n // 2)
    edges = [(i, i + 1) for i in range(spine - 1)]
    for leg in range(spine, n):
        edges.append((rng.randrange(spine), leg))
    return build_graph(n, edges)


def _grid(spec: GeneratorSpec) -> Graph:
    n = spec.n
    rows = max(1, int(n**0.5))
    cols = -(-n // rows)
    edges = []
    for v in range(n):
        if (v + 1) % cols != 0 and v + 1 < n:
            edges.append((v, v + 1))
        if v + cols < n:
            edges.append((v, v + cols))
    return build_graph(n, edges)


def _random_connected(spec: GeneratorSpec) -> Graph:
    """Uniform random tree via a random Prufer sequence, plus extra edges."""
    n = spec.n
    rng = random.Random(spec.seed)
    p = DEFAULT_EXTRA_EDGE_P if spec.p is None else spec.p
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    edges = set(_decode_prufer(n, seq))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return build_graph(n, sorted(edges))


def _decode_prufer(n: int, seq: list[int]) -> list[tuple[int, int]]:
    import heapq

    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, a), max(leaf, a)))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    u, v = sorted(leaves)
    edges.append((u, v))
    return edges


def _case_dimensions(n: int) -> tuple[int, int]:
    """(spokes in the second part, spokes in the largest part) for case families."""
    if n < 15:
        raise InvalidSpec(f"case families need n >= 15, got {n}")
    if n % 2:
        m4 = (n - 3) // 2
        m3 = m4 - 1
    else:
        m4 = (n - 4) // 2
        m3 = m4
    return m3, m4


def _cross_edges(
    rng: random.Random, s_spokes: list[int], t_spokes: list[int], cross: int | None
) -> list[tuple[int, int]]:
    pairs = [(s, t) for s in s_spokes for t in t_spokes]
    if cross is None:
        cross = rng.randint(1, max(1, min(len(pairs), 2 * len(s_spokes)) // 2))
    if not 1 <= cross <= len(pairs):
        raise InvalidSpec(f"cross must be in 1..{len(pairs)}, got {cross}")
    return rng.sample(pairs, cross)


def generate_with_partition(spec: GeneratorSpec) -> tuple[Graph, Partition]:
    """Case-family instance plus its canonical stalled tetrapartition."""
    if spec.family not in CASE_FAMILIES:
        raise InvalidSpec(f"{spec.family!r} has no canonical partition")
    m3, m4 = _case_dimensions(spec.n)
    rng = random.Random(spec.seed)
    if spec.family == "double_star_case1":
        # Second part is a star at vertex 0; both singletons hang on the
        # largest part's hub.
        v = 0
        t_spokes = list(range(1, m3 + 1))
        a, b = m3 + 1, m3 + 2
        u = m3 + 3
        s_spokes = list(range(m3 + 4, m3 + 4 + m4))
        edges = [(v, t) for t in t_spokes]
        edges += [(u, a), (u, b)]
        edges += [(u, s) for s in s_spokes]
        edges += _cross_edges(rng, s_spokes, t_spokes, spec.cross)
        parts = [{a}, {b}, {v, *t_spokes}, {u, *s_spokes}]
        case = 1
    elif spec.family == "double_star_case2":
        # Both singletons hang on the second part's hub at vertex 0.
        v = 0
        a, b = 1, 2
        t_spokes = list(range(3, m3 + 3))
        u = m3 + 3
        s_spokes = list(range(m3 + 4, m3 + 4 + m4))
        edges = [(v, a), (v, b)]
        edges += [(v, t) for t in t_spokes]
        edges += [(u, s) for s in s_spokes]
        edges += _cross_edges(rng, s_spokes, t_spokes, spec.cross)
        parts = [{a}, {b}, {v, *t_spokes}, {u, *s_spokes}]
        case = 2
    else:
        # One singleton on the second part's hub, the other on the largest's.
        v = 0
        a = 1
        t_spokes = list(range(2, m3 + 2))
        u = m3 + 2
        b = m3 + 3
        s_spokes = list(range(m3 + 4, m3 + 4 + m4))
        edges = [(v, a)]
        edges += [(v, t) for t in t_spokes]
        edges += [(u, b)]
        edges += [(u, s) for s in s_spokes]
        edges += _cross_edges(rng, s_spokes, t_spokes, spec.cross)
        parts = [{a}, {b}, {v, *t_spokes}, {u, *s_spokes}]
        case = 3
    g = build_graph(spec.n, edges)
    p = Partition.from_parts(parts)
    _verify_case_instance(g, p, case)
    return g, p


def _verify_case_instance(g: Graph, p: Partition, case: int) -> None:
    from .approx4 import classify_case, try_merge4, try_pull4
    from .partition import check_feasible

    if not check_feasible(g, p):
        raise InvalidSpec("case family emitted an infeasible partition")
    if 5 * p.size <= 2 * g.n:
        raise InvalidSpec("case family emitted an undersized largest part")
    if try_merge4(g, p) is not None or try_pull4(g, p) is not None:
        raise InvalidSpec("case family emitted a partition that is not stalled")
    stall, early = classify_case(g, p)
    if early is not None or stall.case != case:
        raise InvalidSpec(f"case family classified as {early or stall.case}, wanted case {case}")
