"""Four-part min-max partition with the improved 24/13 guarantee.

The loop drives Merge/Pull while the largest part exceeds 2n/5. At a stall the
graph has rigid structure around one or two hub vertices; classify_case checks
every structural predicate, dispatches into one of three adjacency cases, and
the case handlers either certify a ratio directly (24/13, 12/7, 3/2, 4/3, or
outright optimality) or build one more strictly improving move: a balanced
rebuild of the unclear big part, or one of three Bridge operations that grow a
new mid-size part from hub components on both sides.

All threshold comparisons are exact integer arithmetic (a*q vs b*p), never
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DegenerateSubset, NTooSmall, StructureViolation
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
from .approx3 import pull_candidates

_MERGE_PAIRS = ((1, 2), (1, 3), (2, 3))
_PULL_PAIRS = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class StallStructure4:
    """Structure of a Merge/Pull stall with the largest part above 2n/5.

    `u` is the single vertex of the largest part receiving every edge from the
    small parts that touch it; `v` is the same for the second-largest part.
    Whichever hub the stall case does not pin down starts as None and is filled
    in once the balanced-bipartition step degenerates to a star.
    """

    case: int  # 1 | 2 | 3
    u: int | None
    v: int | None
    small_on_v3: int | None  # case 3: which of parts 1/2 hangs on v
    components4: tuple[VertexSet, ...] | None  # components of G[V4 - {u}]
    components3: tuple[VertexSet, ...] | None  # components of G[V3 - {v}]
    adj3: tuple[bool, bool]  # (V1 adj V3, V2 adj V3)
    adj4: tuple[bool, bool]


@dataclass(frozen=True)
class BalancedCut:
    small: VertexSet
    large: VertexSet


@dataclass(frozen=True)
class StarCenter:
    center: int


@dataclass
class BridgeGrowth:
    """State of one bridge growth run seeded at an adjacent component pair."""

    v3_side: VertexSet
    v4_side: VertexSet
    used3: set[int]
    used4: set[int]
    crossed: int | None  # 3 | 4 | None (stalled under both caps)


def try_merge4(g: Graph, p: Partition) -> Move | None:
    """Fuse the first adjacent small pair whose union stays below the largest part."""
    parts = p.parts
    v4 = parts[3]
    for i, j in _MERGE_PAIRS:
        a, b = parts[i - 1], parts[j - 1]
        if len(a) + len(b) < len(v4) and parts_adjacent(g, a, b):
            h = parts[(6 - i - j) - 1]
            s1, s2 = most_balanced_tree_cut(g, v4)
            return Move(
                "Merge",
                {"merged": (a, b), "split": (s1, s2)},
                Partition.from_parts([a | b, h, s1, s2]),
            )
    return None


def try_pull4(g: Graph, p: Partition) -> Move | None:
    """Move the first valid chunk between the spec'd (receiver, donor) pairs."""
    parts = p.parts
    for i, j in _PULL_PAIRS:
        receiver, donor = parts[i - 1], parts[j - 1]
        for u_set, _ in pull_candidates(g, donor, [receiver]):
            if len(receiver) + len(u_set) < len(donor):
                rest = [parts[t] for t in range(4) if t not in (i - 1, j - 1)]
                return Move(
                    "Pull",
                    {"moved": u_set, "from": donor, "to": receiver},
                    Partition.from_parts([donor - u_set, receiver | u_set, *rest]),
                )
    return None


def _single_hub(g: Graph, big: VertexSet, smalls: VertexSet) -> int:
    hubs = {x for x, _ in boundary_vertices(g, big, smalls)}
    if len(hubs) != 1:
        raise StructureViolation(
            f"edges from the small parts land on {len(hubs)} vertices, expected 1"
        )
    return hubs.pop()


def classify_case(g: Graph, p: Partition) -> tuple[StallStructure4 | None, Certificate | None]:
    """Verify the stall predicates and dispatch; returns (structure, None) or
    (None, early certificate) when the stall already certifies a ratio."""
    v1, v2, v3, v4 = p.parts
    n = g.n
    if 5 * len(v4) <= 2 * n:
        raise StructureViolation("classify_case called without a large part above 2n/5")
    if not (5 * len(v1) < n and 10 * len(v2) < 3 * n and 5 * (len(v1) + len(v2)) < 2 * n):
        raise StructureViolation("small-part size bounds fail at stall")
    if parts_adjacent(g, v1, v2):
        raise StructureViolation("stalled with the two smallest parts adjacent")

    adj3 = (parts_adjacent(g, v1, v3), parts_adjacent(g, v2, v3))
    adj4 = (parts_adjacent(g, v1, v4), parts_adjacent(g, v2, v4))
    for i, small in enumerate((v1, v2)):
        if adj3[i] and len(small) + len(v3) < len(v4):
            raise StructureViolation("small part adjacent to the second part but their union is undersized")

    if 6 * len(v2) >= len(v4):
        return None, Certificate.bi_star(Fraction(24, 13), 0, None, None)

    u = comps4 = None
    if adj4[0] or adj4[1]:
        u = _single_hub(g, v4, v1 | v2)
        comps4 = tuple(components_of_subset(g, v4 - {u}))
        if len(comps4) < 2:
            raise StructureViolation("largest part minus its hub is still connected")
        for i, small in enumerate((v1, v2)):
            if not adj4[i]:
                continue
            for c in comps4:
                if len(c) > len(small):
                    raise StructureViolation("hub component of the largest part is oversized")
                if parts_adjacent(g, c, small):
                    raise StructureViolation("hub component adjacent to a small part")
        for c in comps4:
            if parts_adjacent(g, c, v3) and len(c) + len(v3) < len(v4):
                raise StructureViolation("hub component plus second part is undersized")

    v = comps3 = None
    if adj3[0] or adj3[1]:
        v = _single_hub(g, v3, v1 | v2)
        comps3 = tuple(components_of_subset(g, v3 - {v}))
        if len(comps3) < 2:
            raise StructureViolation("second part minus its hub is still connected")
        for i, small in enumerate((v1, v2)):
            if not adj3[i]:
                continue
            if 3 * len(small) >= len(v4):
                raise StructureViolation("small part too large for the second-part hub analysis")
            for c in comps3:
                if len(c) > len(small):
                    raise StructureViolation("hub component of the second part is oversized")
                if parts_adjacent(g, c, small):
                    raise StructureViolation("second-part hub component adjacent to a small part")

    if not adj3[0] and not adj3[1]:
        if not (adj4[0] and adj4[1]):
            raise StructureViolation("a small part is adjacent to neither big part")
        case = 1
        small_on_v3 = None
        if not any(parts_adjacent(g, c, v3) for c in comps4):
            # The second part also meets the largest only at the hub: the whole
            # graph is a star around u and the partition is optimal.
            return None, Certificate.star_optimal(u)
    elif not adj4[0] and not adj4[1]:
        if not (adj3[0] and adj3[1]):
            raise StructureViolation("a small part is adjacent to neither big part")
        case = 2
        small_on_v3 = None
    else:
        case = 3
        small_on_v3 = next(
            (i for i in (1, 2) if adj3[i - 1] and adj4[(3 - i) - 1]), None
        )
        if small_on_v3 is None:
            raise StructureViolation("no valid hub designation in the mixed case")

    if len(v2) + len(v3) < len(v4) or 2 * len(v4) >= n or 3 * len(v3) <= n:
        raise StructureViolation("stall size system fails")

    return (
        StallStructure4(case, u, v, small_on_v3, comps4, comps3, adj3, adj4),
        None,
    )


def bipartition_or_star(
    g: Graph, s: VertexSet, budget: int | None = None
) -> BalancedCut | StarCenter:
    """Bipartition G[s] as evenly as possible by a pull loop.

    Returns the bipartition once the larger side is at most 2|s|/3. If the
    loop stalls above that, the stall analysis yields a cut vertex whose
    removal leaves only components smaller than |s|/3, which is verified
    before returning it.
    """
    s = frozenset(s)
    if len(s) < 3:
        raise DegenerateSubset(f"need at least 3 vertices, got {len(s)}")
    small, large = most_balanced_tree_cut(g, s)
    steps = 0
    while 3 * len(large) > 2 * len(s):
        moved = None
        for u_set, _ in pull_candidates(g, large, [small]):
            if len(small) + len(u_set) < len(large):
                moved = u_set
                break
        if moved is None:
            x = boundary_vertices(g, large, small)[0][0]
            comps = components_of_subset(g, s - {x})
            if len(comps) < 2 or any(3 * len(c) >= len(s) for c in comps):
                raise StructureViolation("bipartition stall without the star property")
            return StarCenter(x)
        a, b = small | moved, large - moved
        if (len(a), min(a)) <= (len(b), min(b)):
            small, large = a, b
        else:
            small, large = b, a
        steps += 1
        if budget is not None and steps > budget:
            raise StructureViolation(f"bipartition pull loop exceeded budget {budget}")
    return BalancedCut(small, large)


def _minimal_prefix(comps: list[VertexSet], need: int) -> list[VertexSet] | None:
    """Greedy prefix (components in deterministic order) whose total first exceeds need."""
    acc = 0
    out: list[VertexSet] = []
    for c in comps:
        out.append(c)
        acc += len(c)
        if acc > need:
            return out
    return None


def _grow_from(
    g: Graph,
    comps3: tuple[VertexSet, ...],
    comps4: tuple[VertexSet, ...],
    seed3: int,
    seed4: int,
    cap3: int,
    cap4: int,
) -> BridgeGrowth:
    """Alternately absorb adjacent components on each side until a cap is
    crossed (minimal greedy sub-collection) or no side can grow."""
    used3, used4 = {seed3}, {seed4}
    v3_side = set(comps3[seed3])
    v4_side = set(comps4[seed4])
    while True:
        c3 = [j for j in range(len(comps3)) if j not in used3 and parts_adjacent(g, comps3[j], v4_side)]
        th3 = cap3 - len(v3_side)
        if sum(len(comps3[j]) for j in c3) > th3:
            acc = 0
            for j in c3:
                used3.add(j)
                v3_side |= comps3[j]
                acc += len(comps3[j])
                if acc > th3:
                    break
            return BridgeGrowth(frozenset(v3_side), frozenset(v4_side), used3, used4, 3)
        for j in c3:
            used3.add(j)
            v3_side |= comps3[j]
        c4 = [j for j in range(len(comps4)) if j not in used4 and parts_adjacent(g, comps4[j], v3_side)]
        th4 = cap4 - len(v4_side)
        if sum(len(comps4[j]) for j in c4) > th4:
            acc = 0
            for j in c4:
                used4.add(j)
                v4_side |= comps4[j]
                acc += len(comps4[j])
                if acc > th4:
                    break
            return BridgeGrowth(frozenset(v3_side), frozenset(v4_side), used3, used4, 4)
        for j in c4:
            used4.add(j)
            v4_side |= comps4[j]
        if not c3 and not c4:
            return BridgeGrowth(frozenset(v3_side), frozenset(v4_side), used3, used4, None)


def _bridge_growth(
    g: Graph,
    comps3: tuple[VertexSet, ...],
    comps4: tuple[VertexSet, ...],
    cap3: int,
    cap4: int,
) -> BridgeGrowth | None:
    """Try every adjacent seed pair; return the first growth that crosses a cap.

    A stalled growth has absorbed its entire residual component, so its
    components are dead for later seeds.
    """
    dead3: set[int] = set()
    dead4: set[int] = set()
    for x in range(len(comps4)):
        if x in dead4:
            continue
        for y in range(len(comps3)):
            if y in dead3:
                continue
            if not parts_adjacent(g, comps4[x], comps3[y]):
                continue
            growth = _grow_from(g, comps3, comps4, y, x, cap3, cap4)
            if growth.crossed is not None:
                return growth
            dead3 |= growth.used3
            dead4 |= growth.used4
    return None


def try_bridge1(g: Graph, p: Partition, s: StallStructure4) -> Move | None:
    """Case 1 bridge: caps 2|V1| on the second-part side, |V1| on the largest side."""
    v1, v2, v3, v4 = p.parts
    comps3 = s.components3
    comps4 = s.components4
    growth = _bridge_growth(g, comps3, comps4, cap3=2 * len(v1), cap4=len(v1))
    if growth is None:
        return None
    v3p, v4p = growth.v3_side, growth.v4_side
    detail: dict[str, object] = {"v3_side": v3p, "v4_side": v4p}
    if growth.crossed == 4:
        if not len(v1) < len(v4p) <= 2 * len(v1):
            raise StructureViolation("bridge growth crossed the largest-side cap out of range")
        parts = [(v4 | v1) - v4p, v4p | v3p, v3 - v3p, v2]
    else:
        if len(v4p) > len(v1) or 3 * (len(v3p) - 2 * len(v1)) >= len(v3):
            raise StructureViolation("bridge growth crossed the second-side cap out of range")
        unused = [c for j, c in enumerate(comps4) if j not in growth.used4]
        need = len(v1) - len(v4p)
        attached = _minimal_prefix([c for c in unused if parts_adjacent(g, c, v3p)], need)
        if attached is not None:
            v4pp = frozenset().union(*attached) if attached else frozenset()
            detail["extra_largest_side"] = v4pp
            parts = [(v4 | v1) - (v4p | v4pp), v4p | v4pp | v3p, v3 - v3p, v2]
        else:
            spare = [
                c
                for c in unused
                if not parts_adjacent(g, c, v3p) and parts_adjacent(g, c, v3)
            ]
            chosen = _minimal_prefix(spare, need)
            if chosen is None:
                raise StructureViolation("no component collection can rebalance the bridge")
            v4pp = frozenset().union(*chosen)
            detail["extra_second_side"] = v4pp
            parts = [(v4 | v1) - (v4p | v4pp), v4p | v3p, (v3 - v3p) | v4pp, v2]
    return Move("Bridge1", detail, Partition.from_parts(parts))


def try_bridge2(g: Graph, p: Partition, s: StallStructure4) -> Move | None:
    """Case 2 bridge: mirror of Bridge-1 with the big parts' roles swapped."""
    v1, v2, v3, v4 = p.parts
    comps3 = s.components3
    comps4 = s.components4
    growth = _bridge_growth(g, comps3, comps4, cap3=len(v1), cap4=2 * len(v1))
    if growth is None:
        return None
    v3p, v4p = growth.v3_side, growth.v4_side
    detail: dict[str, object] = {"v3_side": v3p, "v4_side": v4p}
    if growth.crossed == 3:
        if not len(v1) < len(v3p) <= 2 * len(v1):
            raise StructureViolation("bridge growth crossed the second-side cap out of range")
        parts = [(v3 | v1) - v3p, v3p | v4p, v4 - v4p, v2]
    else:
        if len(v3p) > len(v1) or 3 * (len(v4p) - 2 * len(v1)) >= len(v4):
            raise StructureViolation("bridge growth crossed the largest-side cap out of range")
        unused = [c for j, c in enumerate(comps3) if j not in growth.used3]
        need = len(v1) - len(v3p)
        attached = _minimal_prefix([c for c in unused if parts_adjacent(g, c, v4p)], need)
        if attached is not None:
            v3pp = frozenset().union(*attached)
            detail["extra_second_side"] = v3pp
            parts = [(v3 | v1) - (v3p | v3pp), v3p | v3pp | v4p, v4 - v4p, v2]
        else:
            spare = [
                c
                for c in unused
                if not parts_adjacent(g, c, v4p) and parts_adjacent(g, c, v4)
            ]
            chosen = _minimal_prefix(spare, need)
            if chosen is None:
                raise StructureViolation("no component collection can rebalance the bridge")
            v3pp = frozenset().union(*chosen)
            detail["extra_largest_side"] = v3pp
            parts = [(v3 | v1) - (v3p | v3pp), v3p | v4p, (v4 - v4p) | v3pp, v2]
    return Move("Bridge2", detail, Partition.from_parts(parts))


def try_bridge3(g: Graph, p: Partition, s: StallStructure4) -> Move | None:
    """Case 3 bridge: caps |Vi| and |Vj|; one small part rides along unchanged."""
    v1, v2, v3, v4 = p.parts
    vi = p.parts[s.small_on_v3 - 1]
    vj = p.parts[(3 - s.small_on_v3) - 1]
    growth = _bridge_growth(g, s.components3, s.components4, cap3=len(vi), cap4=len(vj))
    if growth is None:
        return None
    v3p, v4p = growth.v3_side, growth.v4_side
    detail: dict[str, object] = {"v3_side": v3p, "v4_side": v4p}
    if growth.crossed == 3:
        if len(v4p) > len(vj) or not len(vi) < len(v3p) <= 2 * len(vi):
            raise StructureViolation("bridge growth sizes out of range")
        parts = [v4p | v3p, v4 - v4p, (v3 - v3p) | vi, vj]
    else:
        if len(v3p) > len(vi) or not len(vj) < len(v4p) <= 2 * len(vj):
            raise StructureViolation("bridge growth sizes out of range")
        parts = [v4p | v3p, (v4 - v4p) | vj, v3 - v3p, vi]
    return Move("Bridge3", detail, Partition.from_parts(parts))


def _rebalance(
    g: Graph,
    p: Partition,
    cut: BalancedCut,
    comps: tuple[VertexSet, ...],
    big: VertexSet,
    other_big: VertexSet,
) -> Move:
    """Move a minimal component collection from `other_big`'s hub into one side
    of `big`'s balanced bipartition, folding the smallest part into `other_big`."""
    v1, v2 = p.parts[0], p.parts[1]
    for side, rest in ((cut.small, cut.large), (cut.large, cut.small)):
        cand = [c for c in comps if parts_adjacent(g, c, side)]
        picked = _minimal_prefix(cand, len(v1))
        if picked is None:
            continue
        moved = frozenset().union(*picked)
        return Move(
            "Rebalance",
            {"moved": moved, "into_side": side},
            Partition.from_parts([(other_big | v1) - moved, moved | side, rest, v2]),
        )
    raise StructureViolation("balanced rebuild found no component collection above |V1|")


def _resolve_case1(g: Graph, p: Partition, s: StallStructure4) -> Move | Certificate:
    v1, v2, v3, v4 = p.parts
    touching = [c for c in s.components4 if parts_adjacent(g, c, v3)]
    total = sum(len(c) for c in touching)
    if 24 * total <= 24 * (len(v1) + len(v2)) + 11 * len(v4):
        return Certificate.bi_star(Fraction(24, 13), 1, s.u, None)
    shape = bipartition_or_star(g, v3)
    if isinstance(shape, BalancedCut):
        return _rebalance(g, p, shape, s.components4, v3, v4)
    s = replace(s, v=shape.center, components3=tuple(components_of_subset(g, v3 - {shape.center})))
    move = try_bridge1(g, p, s)
    if move is not None:
        return move
    return Certificate.bi_star(Fraction(12, 7), 1, s.u, s.v)


def _resolve_case2(g: Graph, p: Partition, s: StallStructure4) -> Move | Certificate:
    v1, v2, v3, v4 = p.parts
    touching = [c for c in s.components3 if parts_adjacent(g, c, v4)]
    total = sum(len(c) for c in touching)
    if 24 * total <= 24 * len(v2) + 11 * len(v4):
        return Certificate.bi_star(Fraction(24, 13), 2, None, s.v)
    shape = bipartition_or_star(g, v4)
    if isinstance(shape, BalancedCut):
        return _rebalance(g, p, shape, s.components3, v4, v3)
    u = shape.center
    s = replace(s, u=u, components4=tuple(components_of_subset(g, v4 - {u})))
    if not parts_adjacent(g, v3, v4 - {u}):
        return Certificate.bi_star(Fraction(3, 2), 2, u, s.v)
    move = try_bridge2(g, p, s)
    if move is not None:
        return move
    return Certificate.bi_star(Fraction(12, 7), 2, u, s.v)


def _resolve_case3(g: Graph, p: Partition, s: StallStructure4) -> Move | Certificate:
    v1, v2, v3, v4 = p.parts
    vi = p.parts[s.small_on_v3 - 1]
    vj = p.parts[(3 - s.small_on_v3) - 1]
    aug3 = components_of_subset(g, (v3 | vi) - {s.v})
    total3 = sum(len(c) for c in aug3 if parts_adjacent(g, c, v4))
    if 24 * total3 <= 24 * len(vi) + 7 * len(v4):
        return Certificate.bi_star(Fraction(24, 13), 3, s.u, s.v)
    aug4 = components_of_subset(g, (v4 | vj) - {s.u})
    total4 = sum(len(c) for c in aug4 if parts_adjacent(g, c, v3))
    if 24 * total4 <= 24 * len(vj) + 11 * len(v4):
        return Certificate.bi_star(Fraction(24, 13), 3, s.u, s.v)
    move = try_bridge3(g, p, s)
    if move is not None:
        return move
    return Certificate.bi_star(Fraction(4, 3), 3, s.u, s.v)


def approx4(g: Graph) -> PartitionResult:
    """24/13-approximation for the min-max balanced connected tetrapartition."""
    if g.n < 4:
        raise NTooSmall(f"need n >= 4, got {g.n}")
    if g.n < 10:
        from .oracle import exact_opt

        _, p = exact_opt(g, 4)
        return PartitionResult(p, Certificate.oracle_exact())
    trace: list[OpRecord] = []
    p = initial_partition(g, 4, trace)
    n = g.n
    while True:
        if 5 * p.size <= 2 * n:
            return PartitionResult(p, Certificate.bound_met(Fraction(2, 5), 4), tuple(trace))
        move = try_merge4(g, p) or try_pull4(g, p)
        if move is not None:
            p = apply_move(g, p, move, trace)
            continue
        stall, early = classify_case(g, p)
        if early is not None:
            return PartitionResult(p, early, tuple(trace))
        if stall.case == 1:
            outcome = _resolve_case1(g, p, stall)
        elif stall.case == 2:
            outcome = _resolve_case2(g, p, stall)
        else:
            outcome = _resolve_case3(g, p, stall)
        if isinstance(outcome, Move):
            p = apply_move(g, p, outcome, trace)
            continue
        return PartitionResult(p, outcome, tuple(trace))
