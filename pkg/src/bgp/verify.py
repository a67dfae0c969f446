"""Re-verification of output certificates from scratch.

Each certificate tag maps to a structural predicate on (graph, partition) that
is recomputed here without trusting anything the algorithms cached: stalls are
re-detected by re-running the move finders, hubs are re-located, component
bounds and threshold arithmetic are re-evaluated exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .approx3 import extract_stall3, try_merge3, try_pull3
from .approx4 import classify_case, try_merge4, try_pull4
from .errors import BgpError, StructureViolation
from .graph import Graph, components_of_subset, parts_adjacent
from .oracle import exact_opt, oracle_limit
from .partition import (
    BI_STAR_RATIO,
    BOUND_MET,
    ORACLE_EXACT,
    STAR_OPTIMAL,
    Certificate,
    Partition,
    feasibility_error,
)


def verify_certificate(g: Graph, p: Partition, c: Certificate) -> bool:
    return certificate_error(g, p, c) is None


def certificate_error(g: Graph, p: Partition, c: Certificate) -> str | None:
    """None iff the certificate's claim re-verifies; otherwise a diagnostic."""
    reason = feasibility_error(g, p)
    if reason is not None:
        return f"infeasible partition: {reason}"
    if c.tag == BOUND_MET:
        return _check_bound_met(g, p, c)
    if c.tag == STAR_OPTIMAL:
        return _check_star_optimal(g, p, c)
    if c.tag == BI_STAR_RATIO:
        return _check_bi_star(g, p, c)
    if c.tag == ORACLE_EXACT:
        return _check_oracle_exact(g, p, c)
    return f"unknown certificate tag {c.tag!r}"


def _check_bound_met(g: Graph, p: Partition, c: Certificate) -> str | None:
    if c.bound is None:
        return "BoundMet without a bound"
    if c.claimed_ratio != c.bound * p.k:
        return "claimed ratio inconsistent with the bound"
    if p.size * c.bound.denominator > c.bound.numerator * g.n:
        return f"size {p.size} exceeds {c.bound} of n={g.n}"
    return None


def _check_star_optimal(g: Graph, p: Partition, c: Certificate) -> str | None:
    if c.center is None or not 0 <= c.center < g.n:
        return "StarOptimal without a valid center"
    if c.claimed_ratio != 1:
        return "StarOptimal must claim ratio 1"
    comps = components_of_subset(g, g.vertices - {c.center})
    if len(comps) < p.k - 1:
        return "fewer hub components than non-hub parts"
    largest = sorted((len(x) for x in comps), reverse=True)[: p.k - 1]
    # Any k-partition's k-1 center-free parts fit inside distinct components,
    # so the center's part has at least n - sum(largest) vertices.
    if p.size > g.n - sum(largest):
        return f"size {p.size} exceeds the structural optimum bound {g.n - sum(largest)}"
    if p.k == 3:
        try:
            stall = extract_stall3(g, p)
        except StructureViolation as exc:
            return f"tripartition star predicates fail: {exc}"
        if stall.center != c.center:
            return "certified center differs from the re-derived hub"
    return None


def _check_oracle_exact(g: Graph, p: Partition, c: Certificate) -> str | None:
    if c.claimed_ratio != 1:
        return "OracleExact must claim ratio 1"
    if g.n > oracle_limit():
        return f"instance too large to re-verify exactly (n={g.n})"
    opt, _ = exact_opt(g, p.k)
    if p.size != opt:
        return f"size {p.size} is not the optimum {opt}"
    return None


def _stall_error(g: Graph, p: Partition) -> str | None:
    if p.k != 4:
        return f"expected a tetrapartition, got k={p.k}"
    if 5 * p.size <= 2 * g.n:
        return "not a stall: largest part within 2n/5"
    if try_merge4(g, p) is not None:
        return "not a stall: a merge still applies"
    if try_pull4(g, p) is not None:
        return "not a stall: a pull still applies"
    return None


def _residual_components(g: Graph, hubs: tuple[int, ...]) -> list[frozenset[int]]:
    return components_of_subset(g, g.vertices - frozenset(hubs))


def _check_bi_star(g: Graph, p: Partition, c: Certificate) -> str | None:
    reason = _stall_error(g, p)
    if reason is not None:
        return reason
    v1, v2, v3, v4 = p.parts
    if c.case == 0:
        if c.claimed_ratio != Fraction(24, 13):
            return "pre-case certificate must claim 24/13"
        if 6 * len(v2) < len(v4):
            return "second-smallest part below one sixth of the largest"
        return None
    try:
        stall, early = classify_case(g, p)
    except (StructureViolation, BgpError) as exc:
        return f"stall structure does not re-derive: {exc}"
    if early is not None:
        return f"stall classifies to an early {early.tag} certificate, not case {c.case}"
    if stall.case != c.case:
        return f"stall classifies as case {stall.case}, certificate claims case {c.case}"
    u, v = c.centers if c.centers is not None else (None, None)
    if c.case == 1:
        if u != stall.u:
            return "certified largest-part hub differs from the re-derived one"
        touching = [x for x in stall.components4 if parts_adjacent(g, x, v3)]
        total = sum(len(x) for x in touching)
        threshold_met = 24 * total <= 24 * (len(v1) + len(v2)) + 11 * len(v4)
        if c.claimed_ratio == Fraction(24, 13):
            return None if threshold_met else "component total exceeds the 24/13 threshold"
        if c.claimed_ratio == Fraction(12, 7):
            if threshold_met:
                return "12/7 claimed although the 24/13 threshold holds"
            return _check_second_hub(g, p, v3, v) or _check_residual_bound(
                g, (u, v), max(3 * len(v1), len(v2))
            )
        return f"unsupported case-1 ratio {c.claimed_ratio}"
    if c.case == 2:
        if v != stall.v:
            return "certified second-part hub differs from the re-derived one"
        touching = [x for x in stall.components3 if parts_adjacent(g, x, v4)]
        total = sum(len(x) for x in touching)
        threshold_met = 24 * total <= 24 * len(v2) + 11 * len(v4)
        if c.claimed_ratio == Fraction(24, 13):
            return None if threshold_met else "component total exceeds the 24/13 threshold"
        hub_reason = _check_second_hub(g, p, v4, u)
        if hub_reason is not None:
            return hub_reason
        if c.claimed_ratio == Fraction(3, 2):
            if parts_adjacent(g, v3, v4 - {u}):
                return "second part touches the largest part beyond its hub"
            return _check_residual_bound(g, (u, v), None, strict_third=len(v4))
        if c.claimed_ratio == Fraction(12, 7):
            if threshold_met:
                return "12/7 claimed although the 24/13 threshold holds"
            return _check_residual_bound(g, (u, v), max(3 * len(v1), len(v2)))
        return f"unsupported case-2 ratio {c.claimed_ratio}"
    if c.case == 3:
        if (u, v) != (stall.u, stall.v):
            return "certified hubs differ from the re-derived ones"
        vi = p.parts[stall.small_on_v3 - 1]
        vj = p.parts[(3 - stall.small_on_v3) - 1]
        aug3 = components_of_subset(g, (v3 | vi) - {v})
        total3 = sum(len(x) for x in aug3 if parts_adjacent(g, x, v4))
        aug4 = components_of_subset(g, (v4 | vj) - {u})
        total4 = sum(len(x) for x in aug4 if parts_adjacent(g, x, v3))
        met3 = 24 * total3 <= 24 * len(vi) + 7 * len(v4)
        met4 = 24 * total4 <= 24 * len(vj) + 11 * len(v4)
        if c.claimed_ratio == Fraction(24, 13):
            return None if (met3 or met4) else "neither mixed-case threshold holds"
        if c.claimed_ratio == Fraction(4, 3):
            if met3 or met4:
                return "4/3 claimed although a 24/13 threshold holds"
            return _check_residual_bound(g, (u, v), len(v1) + len(v2))
        return f"unsupported case-3 ratio {c.claimed_ratio}"
    return f"unsupported case {c.case}"


def _check_second_hub(g: Graph, p: Partition, big: frozenset[int], hub: int | None) -> str | None:
    """The discovered hub must shatter its part into components below a third of it."""
    if hub is None or hub not in big:
        return "missing or misplaced secondary hub"
    comps = components_of_subset(g, big - {hub})
    if len(comps) < 2:
        return "secondary hub does not disconnect its part"
    if any(3 * len(x) >= len(big) for x in comps):
        return "a secondary-hub component reaches a third of its part"
    return None


def _check_residual_bound(
    g: Graph,
    hubs: tuple[int | None, int | None],
    bound: int | None,
    strict_third: int | None = None,
) -> str | None:
    """Every component of the graph minus both hubs stays below the stated bound."""
    if hubs[0] is None or hubs[1] is None:
        return "residual bound needs both hubs"
    comps = _residual_components(g, (hubs[0], hubs[1]))
    for x in comps:
        if bound is not None and len(x) > bound:
            return f"residual component of size {len(x)} exceeds {bound}"
        if strict_third is not None and 3 * len(x) >= strict_third:
            return f"residual component of size {len(x)} reaches a third of the largest part"
    return None
