"""k/2-approximation for any fixed k >= 3, built on the tripartition algorithm.

Run the three-part algorithm first. If it reached size <= n/2, repeatedly
split the largest part until k parts exist. If it stalled at the star
structure around a hub u, the components of G[V - {u}] are all small and
pairwise non-adjacent: take the k-1 largest components as parts and the hub
plus the leftovers as the last part (splitting further when there are fewer
components than parts needed). When the hub part ends up largest it is
provably optimal; otherwise the size is a component below n/2.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import KTooLarge, KTooSmall
from .graph import Graph, components_of_subset, most_balanced_tree_cut
from .partition import (
    BOUND_MET,
    ORACLE_EXACT,
    STAR_OPTIMAL,
    Certificate,
    OpRecord,
    Partition,
    PartitionResult,
    rank,
)
from .approx3 import approx3


def _split_until(g: Graph, p: Partition, k: int, trace: list[OpRecord]) -> Partition:
    parts = list(p.parts)
    while len(parts) < k:
        target = max(parts, key=lambda s: (len(s), -min(s)))
        before = rank(Partition.from_parts(parts))
        parts.remove(target)
        a, b = most_balanced_tree_cut(g, target)
        parts.extend([a, b])
        after = tuple(sorted((len(s) for s in parts), reverse=True))
        trace.append(OpRecord("Split", {"part": target, "into": (a, b)}, before, after))
    return Partition.from_parts(parts)


def approx_k(g: Graph, k: int) -> PartitionResult:
    """k/2-approximation for the min-max balanced connected k-partition."""
    if k < 3:
        raise KTooSmall(f"need k >= 3, got {k}; use the tripartition algorithm or the oracle")
    if k > g.n:
        raise KTooLarge(f"k={k} exceeds n={g.n}")
    n = g.n
    if k == n:
        p = Partition.from_parts([{v} for v in range(n)])
        return PartitionResult(p, Certificate.bound_met(Fraction(1, 2), k))

    base = approx3(g)
    trace = list(base.trace)

    if base.certificate.tag in (BOUND_MET, ORACLE_EXACT) or 2 * base.size <= n:
        p = _split_until(g, base.partition, k, trace)
        return PartitionResult(p, Certificate.bound_met(Fraction(1, 2), k), tuple(trace))

    assert base.certificate.tag == STAR_OPTIMAL
    hub = base.certificate.center
    comps = components_of_subset(g, g.vertices - {hub})
    comps.sort(key=lambda c: (-len(c), min(c)))
    taken = min(k, len(comps)) - 1
    chosen = comps[:taken]
    last = frozenset({hub}).union(*comps[taken:])
    p = Partition.from_parts([*chosen, last])
    trace.append(
        OpRecord(
            "StarAssembly",
            {"hub": hub, "parts_from_components": tuple(chosen), "hub_part": last},
            rank(base.partition),
            rank(p),
        )
    )
    if p.k < k:
        p = _split_until(g, p, k, trace)
        return PartitionResult(p, Certificate.bound_met(Fraction(1, 2), k), tuple(trace))
    if p.size == len(last):
        return PartitionResult(p, Certificate.star_optimal(hub), tuple(trace))
    return PartitionResult(p, Certificate.bound_met(Fraction(1, 2), k), tuple(trace))
