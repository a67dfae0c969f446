"""Exact min-max connected k-partition by exhaustive search.

Ground truth for ratio checks on small instances. Vertices are assigned to
labels in a fixed BFS order with label-symmetry breaking (vertex 0 on label 0,
new labels opened in ascending order), so each set-partition is visited at
most once. Branch-and-bound against a greedy upper bound plus connectivity
"completability" pruning keep the search fast up to the hard n <= 14 guard.
"""

from __future__ import annotations

import os
from collections import deque

from .errors import InstanceTooLarge, KTooLarge, KTooSmall
from .graph import Graph
from .partition import Partition, initial_partition, lower_bound

ORACLE_LIMIT = 14
_ENV_LIMIT = "BGP_ORACLE_LIMIT"


def oracle_limit() -> int:
    """The hard instance-size guard; the env var may lower it, never raise it."""
    raw = os.environ.get(_ENV_LIMIT)
    if raw is None:
        return ORACLE_LIMIT
    try:
        return min(ORACLE_LIMIT, int(raw))
    except ValueError:
        return ORACLE_LIMIT


def _bfs_order(g: Graph) -> list[int]:
    order = [0]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _mask_connected(mask: int, adj: tuple[int, ...]) -> bool:
    return _flood(mask & -mask, mask, adj) == mask


def _completable(mask: int, pool: int, adj: tuple[int, ...]) -> bool:
    """Can mask still become connected using only vertices from pool?"""
    return mask & ~_flood(mask & -mask, mask | pool, adj) == 0


def _flood(start: int, allowed: int, adj: tuple[int, ...]) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def exact_opt(g: Graph, k: int) -> tuple[int, Partition]:
    """Minimum possible partition size and one witness partition achieving it."""
    n = g.n
    limit = oracle_limit()
    if n > limit:
        raise InstanceTooLarge(f"n={n} exceeds the oracle guard of {limit}")
    if k < 1:
        raise KTooSmall(f"k must be >= 1, got {k}")
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k == n:
        return 1, Partition.from_parts([{v} for v in range(n)])
    if k == 1:
        return n, Partition.from_parts([g.vertices])

    floor = lower_bound(g, k)
    greedy = initial_partition(g, k)
    best_size = greedy.size
    best_masks = tuple(sum(1 << v for v in part) for part in greedy.parts)
    if best_size == floor:
        return floor, greedy

    best = _search(g, k, floor, best_size, best_masks)
    best_size, best_masks = best
    witness = Partition.from_parts(
        [{v for v in range(n) if mask >> v & 1} for mask in best_masks]
    )
    return best_size, witness


def _search(
    g: Graph, k: int, floor: int, best_size: int, best_masks: tuple[int, ...]
) -> tuple[int, tuple[int, ...]]:
    n = g.n
    adj = g.neighbor_masks
    order = _bfs_order(g)
    suffix = [0] * (n + 1)  # suffix[i] = vertices not yet assigned at depth i
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])

    masks = [0] * k
    counts = [0] * k
    connected = [True] * k
    state = {"best_size": best_size, "best_masks": best_masks, "stop": False}

    def dfs(i: int, used: int) -> None:
        if state["stop"]:
            return
        if i == n:
            if all(
                connected[c] or _mask_connected(masks[c], adj) for c in range(k)
            ):
                size = max(counts)
                if size < state["best_size"]:
                    state["best_size"] = size
                    state["best_masks"] = tuple(masks)
                    if size == floor:
                        state["stop"] = True
            return
        v = order[i]
        bit = 1 << v
        rest = n - i - 1
        pool = suffix[i + 1]
        cap = state["best_size"] - 1
        top = used + 1 if used < k else k
        for c in range(top):
            if counts[c] >= cap:
                continue
            opening = c == used
            if rest < k - used - (1 if opening else 0):
                continue
            old_mask = masks[c]
            old_conn = connected[c]
            new_mask = old_mask | bit
            if old_mask == 0:
                connected[c] = True
            elif adj[v] & old_mask:
                if not old_conn:
                    if _mask_connected(new_mask, adj):
                        connected[c] = True
                    elif not _completable(new_mask, pool, adj):
                        continue
            else:
                if not _completable(new_mask, pool, adj):
                    continue
                connected[c] = False
            masks[c] = new_mask
            counts[c] += 1
            dfs(i + 1, used + 1 if opening else used)
            masks[c] = old_mask
            counts[c] -= 1
            connected[c] = old_conn
            if state["stop"]:
                return

    dfs(0, 0)
    return state["best_size"], state["best_masks"]


def enumerate_connected_partitions(g: Graph, k: int):
    """Yield every connected k-partition exactly once (no size pruning).

    Test hook for the symmetry-breaking at-most-once property; uses the same
    label order as the optimizing search.
    """
    n = g.n
    if n > oracle_limit():
        raise InstanceTooLarge(f"n={n} exceeds the oracle guard")
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    adj = g.neighbor_masks
    order = _bfs_order(g)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    masks = [0] * k
    out: list[Partition] = []

    def dfs(i: int, used: int):
        if i == n:
            if all(_mask_connected(m, adj) for m in masks):
                yield Partition.from_parts(
                    [{v for v in range(n) if m >> v & 1} for m in masks]
                )
            return
        v = order[i]
        bit = 1 << v
        rest = n - i - 1
        pool = suffix[i + 1]
        top = used + 1 if used < k else k
        for c in range(top):
            opening = c == used
            if rest < k - used - (1 if opening else 0):
                continue
            old = masks[c]
            if old and not _completable(old | bit, pool, adj):
                continue
            masks[c] = old | bit
            yield from dfs(i + 1, used + 1 if opening else used)
            masks[c] = old
        return

    yield from dfs(0, 0)
