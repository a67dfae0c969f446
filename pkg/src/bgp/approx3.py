"""Three-part min-max partition by local improvement.

Two moves drive the loop while the largest part exceeds n/2: Merge fuses the
two small parts and rebalances the split of the old largest part; Pull moves a
connected chunk from the largest part to an adjacent smaller one. When neither
applies, the graph provably has a star-like cut structure around one hub
vertex, and the current partition is optimal; the returned certificate carries
that hub so the claim can be re-verified from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import NTooSmall, StructureViolation
from .graph import (
    Graph,
    VertexSet,
    boundary_vertices,
    components_of_subset,
    most_balanced_tree_cut,
    parts_adjacent,
)
from .partition import (
    Certificate,
    Move,
    OpRecord,
    Partition,
    PartitionResult,
    apply_move,
    initial_partition,
)


@dataclass(frozen=True)
class StallStructure3:
    """The terminal star structure: every edge from the two small parts into the
    largest part lands on `center`, and removing `center` from the largest part
    leaves only small components not adjacent to either small part."""

    center: int
    hub_components: tuple[VertexSet, ...]


def pull_candidates(
    g: Graph, donor: VertexSet, receivers: list[VertexSet]
) -> Iterator[tuple[VertexSet, int]]:
    """Yield (U, receiver index) pulls in deterministic order.

    For each crossing edge (x in donor, y in some receiver), ascending by
    (x, y): the hub singleton {x} when its removal keeps the donor connected,
    then each component of donor minus x adjacent to the receiver, then each
    complement of a single component. Every yielded U keeps both G[U] and
    G[donor - U] connected and touches the receiver; size checks are the
    caller's.
    """
    merged = frozenset().union(*receivers)
    for x, y in boundary_vertices(g, donor, merged):
        ri = next(i for i, r in enumerate(receivers) if y in r)
        receiver = receivers[ri]
        comps = components_of_subset(g, donor - {x})
        if len(comps) == 1:
            yield frozenset({x}), ri
            continue
        for comp in comps:
            if parts_adjacent(g, comp, receiver):
                yield comp, ri
        for comp in comps:
            yield donor - comp, ri


def try_merge3(g: Graph, p: Partition) -> Move | None:
    """Fuse the two small parts if adjacent; rebalance-split the largest part."""
    v1, v2, v3 = p.parts
    if not parts_adjacent(g, v1, v2):
        return None
    a, b = most_balanced_tree_cut(g, v3)
    return Move(
        "Merge",
        {"merged": (v1, v2), "split": (a, b)},
        Partition.from_parts([v1 | v2, a, b]),
    )


def try_pull3(g: Graph, p: Partition) -> Move | None:
    """Move the first valid chunk from the largest part to an adjacent small part."""
    v1, v2, v3 = p.parts
    for u_set, ri in pull_candidates(g, v3, [v1, v2]):
        receiver = (v1, v2)[ri]
        if len(receiver) + len(u_set) < len(v3):
            other = (v2, v1)[ri]
            return Move(
                "Pull",
                {"moved": u_set, "from": v3, "to": receiver},
                Partition.from_parts([v3 - u_set, receiver | u_set, other]),
            )
    return None


def extract_stall3(g: Graph, p: Partition) -> StallStructure3:
    """Check the terminal structure and return it; raises if any predicate fails."""
    v1, v2, v3 = p.parts
    if parts_adjacent(g, v1, v2):
        raise StructureViolation("stalled with the two small parts adjacent")
    for small in (v1, v2):
        if not parts_adjacent(g, small, v3):
            raise StructureViolation("a small part is not adjacent to the largest part")
    hubs = {x for x, _ in boundary_vertices(g, v3, v1 | v2)}
    if len(hubs) != 1:
        raise StructureViolation(f"crossing edges land on {len(hubs)} hub vertices, expected 1")
    center = hubs.pop()
    comps = components_of_subset(g, v3 - {center})
    if len(comps) < 2:
        raise StructureViolation("largest part minus the hub is still connected")
    for comp in comps:
        if len(comp) > len(v1):
            raise StructureViolation("hub component larger than the smallest part")
        if parts_adjacent(g, comp, v1) or parts_adjacent(g, comp, v2):
            raise StructureViolation("hub component adjacent to a small part")
    return StallStructure3(center, tuple(comps))


def approx3(g: Graph) -> PartitionResult:
    """3/2-approximation for the min-max balanced connected tripartition."""
    if g.n < 3:
        raise NTooSmall(f"need n >= 3, got {g.n}")
    if g.n < 5:
        from .oracle import exact_opt

        _, p = exact_opt(g, 3)
        return PartitionResult(p, Certificate.oracle_exact())
    trace: list[OpRecord] = []
    p = initial_partition(g, 3, trace)
    n = g.n
    while 2 * p.size > n:
        move = try_merge3(g, p) or try_pull3(g, p)
        if move is None:
            stall = extract_stall3(g, p)
            return PartitionResult(p, Certificate.star_optimal(stall.center), tuple(trace))
        p = apply_move(g, p, move, trace)
    return PartitionResult(p, Certificate.bound_met(Fraction(1, 2), 3), tuple(trace))
