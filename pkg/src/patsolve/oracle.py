"""Brute-force ground truth for tiny instances.

``enumerate_min_tileset`` walks every partition of the cell set (via
restricted growth strings, no pruning of any kind), keeps those that
respect the colouring, decides constructibility for each from first
principles, and reports the smallest.  Everything here is written for
trustworthiness over speed and shares no code with the search engine:
glue classes are computed by breadth-first search over an explicit
slot graph rather than the union-find the rest of the package uses.
Grids beyond 9 cells are refused (the 9-cell count is already 21147
partitions).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .partition import Partition, cell_index, partition_from_labels
from .pattern import ColorGrid

_MAX_CELLS = 9


def iter_set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n items as restricted growth strings: label lists
    where labels[0] == 0 and each label exceeds the running maximum by at
    most one.  Yields Bell(n) tuples in lexicographic order."""
    if n < 1:
        raise ValueError("need at least one item")
    labels = [0] * n

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(labels)
            return
        for v in range(mx + 2):
            labels[i] = v
            yield from rec(i + 1, v if v > mx else mx)

    return rec(1, 0)


def brute_constructible(p: Partition) -> bool:
    """Decide constructibility of a partition from scratch.

    Builds the slot graph (one node per part and side, an edge for every
    internal grid edge's facing side pair), finds its connected
    components by BFS, and checks that no two parts land in the same
    component for both their south and west sides.
    """
    m, n = p.m, p.n
    # node (part, side) with sides "N","E","S","W"
    neighbours: dict[tuple[int, str], list[tuple[int, str]]] = {}
    for lab in range(p.num_parts):
        for side in "NESW":
            neighbours[(lab, side)] = []

    def link(a, b):
        neighbours[a].append(b)
        neighbours[b].append(a)

    for y in range(1, n + 1):
        for x in range(1, m + 1):
            here = p.labels[cell_index(x, y, m)]
            if x < m:
                east = p.labels[cell_index(x + 1, y, m)]
                link((here, "E"), (east, "W"))
            if y < n:
                north = p.labels[cell_index(x, y + 1, m)]
                link((here, "N"), (north, "S"))

    component: dict[tuple[int, str], int] = {}
    next_id = 0
    for node in neighbours:
        if node in component:
            continue
        queue = deque([node])
        component[node] = next_id
        while queue:
            cur = queue.popleft()
            for nb in neighbours[cur]:
                if nb not in component:
                    component[nb] = next_id
                    queue.append(nb)
        next_id += 1

    seen = set()
    for lab in range(p.num_parts):
        key = (component[(lab, "S")], component[(lab, "W")])
        if key in seen:
            return False
        seen.add(key)
    return True


@dataclass(frozen=True)
class OracleResult:
    min_size: int
    witness: Partition
    count_constructible: int


def enumerate_min_tileset(grid: ColorGrid) -> OracleResult:
    """Exhaustively determine the minimum tile count for a grid.

    Considers every partition of the cells that keeps each part within
    one colour, counts the constructible ones, and returns the smallest
    (the first such in enumeration order as witness).
    """
    mn = grid.m * grid.n
    if mn > _MAX_CELLS:
        raise ValueError(f"brute force is limited to {_MAX_CELLS} cells, got {mn}")

    best: Partition | None = None
    constructible = 0
    for labels in iter_set_partitions(mn):
        groups: dict[int, int] = {}
        respects = True
        for lab, colour in zip(labels, grid.cells):
            want = groups.setdefault(lab, colour)
            if want != colour:
                respects = False
                break
        if not respects:
            continue
        p = partition_from_labels(grid.m, grid.n, labels)
        if brute_constructible(p):
            constructible += 1
            if best is None or p.num_parts < best.num_parts:
                best = p
    assert best is not None  # the discrete partition always qualifies
    return OracleResult(
        min_size=best.num_parts,
        witness=best,
        count_constructible=constructible,
    )
