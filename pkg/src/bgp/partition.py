"""Partition data model: the strict improvement order, initial partitions,
feasibility checking, certificates, and operation traces.

Parts are kept sorted by ascending cardinality (ties by smallest contained
vertex), so parts[-1] is always the largest part. Ranks are descending size
tuples compared lexicographically; a strictly smaller rank is a strictly
better partition, which is what makes every improvement loop terminate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import KTooLarge, KTooSmall, MismatchedShape, StructureViolation
from .graph import Graph, VertexSet, is_connected_subset, most_balanced_tree_cut

# Certificate tags (also the wire names in JSON output).
BOUND_MET = "BoundMet"
STAR_OPTIMAL = "StarOptimal"
BI_STAR_RATIO = "BiStarRatio"
ORACLE_EXACT = "OracleExact"

# Trace kinds. Merge/Pull/Bridge*/Rebalance strictly improve the rank;
# Split and StarAssembly only promise a non-increasing maximum.
IMPROVEMENT_KINDS = frozenset({"Merge", "Pull", "Bridge1", "Bridge2", "Bridge3", "Rebalance"})
RESHAPE_KINDS = frozenset({"Split", "StarAssembly"})


def _part_key(s: VertexSet) -> tuple[int, int]:
    return (len(s), min(s))


@dataclass(frozen=True)
class Partition:
    """k pairwise disjoint nonempty vertex sets, sorted ascending by size."""

    parts: tuple[VertexSet, ...]

    @staticmethod
    def from_parts(parts: Iterable[Iterable[int]]) -> "Partition":
        canonical = tuple(sorted((frozenset(p) for p in parts), key=_part_key))
        if not canonical or any(not p for p in canonical):
            raise StructureViolation("partitions need at least one nonempty part each")
        total = sum(len(p) for p in canonical)
        if total != len(frozenset().union(*canonical)):
            raise StructureViolation("parts overlap")
        return Partition(canonical)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def size(self) -> int:
        """The partition's size: the cardinality of its largest part."""
        return len(self.parts[-1])

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)


PartitionRank = tuple[int, ...]


def rank(p: Partition) -> PartitionRank:
    """Descending size sequence; lexicographically smaller means better."""
    return tuple(sorted((len(s) for s in p.parts), reverse=True))


def better_than(a: PartitionRank, b: PartitionRank) -> bool:
    """Strict lexicographic order on descending ranks of the same shape."""
    if len(a) != len(b) or sum(a) != sum(b):
        raise MismatchedShape(f"cannot compare ranks {a} and {b}")
    return a < b


def lower_bound(g: Graph, k: int) -> int:
    """ceil(n / k): no k-partition can have all parts smaller."""
    if k < 1:
        raise KTooSmall(f"k must be >= 1, got {k}")
    if k > g.n:
        raise KTooLarge(f"k={k} exceeds n={g.n}")
    return -(-g.n // k)


@dataclass(frozen=True)
class OpRecord:
    """One applied operation: what moved, and the rank before and after."""

    kind: str
    detail: dict[str, object]
    rank_before: PartitionRank
    rank_after: PartitionRank


OperationTrace = tuple[OpRecord, ...]


@dataclass(frozen=True)
class Move:
    """A candidate operation: the kind, its parameters, and the resulting partition."""

    kind: str
    detail: dict[str, object]
    partition: Partition


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable witness of which ratio guarantee applies to an output."""

    tag: str
    claimed_ratio: Fraction
    bound: Fraction | None = None  # BoundMet: size <= bound * n
    center: int | None = None  # StarOptimal hub
    case: int | None = None  # BiStarRatio: 0 = pre-case early exit, else 1|2|3
    centers: tuple[int | None, int | None] | None = None  # BiStarRatio hubs (u, v)

    @staticmethod
    def bound_met(bound: Fraction, k: int) -> "Certificate":
        return Certificate(tag=BOUND_MET, claimed_ratio=bound * k, bound=bound)

    @staticmethod
    def star_optimal(center: int) -> "Certificate":
        return Certificate(tag=STAR_OPTIMAL, claimed_ratio=Fraction(1), center=center)

    @staticmethod
    def bi_star(ratio: Fraction, case: int, u: int | None, v: int | None) -> "Certificate":
        return Certificate(tag=BI_STAR_RATIO, claimed_ratio=ratio, case=case, centers=(u, v))

    @staticmethod
    def oracle_exact() -> "Certificate":
        return Certificate(tag=ORACLE_EXACT, claimed_ratio=Fraction(1))


@dataclass(frozen=True)
class PartitionResult:
    """An algorithm's output: the partition, its certificate, and the applied-step log."""

    partition: Partition
    certificate: Certificate
    trace: OperationTrace = ()

    @property
    def size(self) -> int:
        return self.partition.size

    @property
    def operation_count(self) -> int:
        """Number of applied improvement operations (splits excluded)."""
        return sum(1 for r in self.trace if r.kind in IMPROVEMENT_KINDS)


def feasibility_error(g: Graph, p: Partition) -> str | None:
    """None iff p is a feasible partition of g; otherwise a diagnostic."""
    if not p.parts:
        return "no parts"
    union: set[int] = set()
    total = 0
    for s in p.parts:
        if not s:
            return "empty part"
        if not s <= g.vertices:
            return f"part contains out-of-range vertices {sorted(s - g.vertices)}"
        total += len(s)
        union |= s
    if len(union) != total:
        return "parts overlap"
    if union != set(g.vertices):
        return f"parts miss vertices {sorted(set(g.vertices) - union)}"
    for s in p.parts:
        if not is_connected_subset(g, s):
            return f"part {sorted(s)} induces a disconnected subgraph"
    keys = [_part_key(s) for s in p.parts]
    if keys != sorted(keys):
        return "parts are not in canonical ascending order"
    return None


def check_feasible(g: Graph, p: Partition) -> bool:
    return feasibility_error(g, p) is None


def initial_partition(
    g: Graph, k: int, trace: list[OpRecord] | None = None
) -> Partition:
    """Feasible start: greedily most-balanced-split the current largest part k-1 times."""
    if k < 1:
        raise KTooSmall(f"k must be >= 1, got {k}")
    if k > g.n:
        raise KTooLarge(f"k={k} exceeds n={g.n}")
    parts: list[VertexSet] = [g.vertices]
    while len(parts) < k:
        parts.sort(key=_part_key)
        target = max(parts, key=lambda s: (len(s), -min(s)))
        before = tuple(sorted((len(s) for s in parts), reverse=True))
        parts.remove(target)
        a, b = most_balanced_tree_cut(g, target)
        parts.extend([a, b])
        if trace is not None:
            after = tuple(sorted((len(s) for s in parts), reverse=True))
            trace.append(
                OpRecord("Split", {"part": target, "into": (a, b)}, before, after)
            )
    return Partition.from_parts(parts)


def apply_move(g: Graph, p: Partition, move: Move, trace: list[OpRecord]) -> Partition:
    """Apply a Move, auditing feasibility and the rank rule for its kind."""
    reason = feasibility_error(g, move.partition)
    if reason is not None:
        raise StructureViolation(f"{move.kind} produced an infeasible partition: {reason}")
    before, after = rank(p), rank(move.partition)
    if move.kind in IMPROVEMENT_KINDS:
        if not better_than(after, before):
            raise StructureViolation(f"{move.kind} did not strictly improve the rank: {before} -> {after}")
    elif after[0] > before[0]:
        raise StructureViolation(f"{move.kind} increased the maximum part: {before} -> {after}")
    trace.append(OpRecord(move.kind, move.detail, before, after))
    return move.partition
