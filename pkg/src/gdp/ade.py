"""ADE (Du Val) singularity labels and Dynkin-diagram recognition."""
from __future__ import annotations

import re
from collections import Counter
from typing import Sequence

_LABEL = re.compile(r"^([ADE])_?(\d+)$")


def parse_label(label: str) -> tuple[str, int]:
    """Split "A4" / "D_5" / "E8" into (family, rank), rejecting non-Dynkin labels."""
    m = _LABEL.match(label.strip())
    if not m:
        raise ValueError(f"not an ADE label: {label!r}")
    family, rank = m.group(1), int(m.group(2))
    if (family == "A" and rank < 1) or (family == "D" and rank < 4) or (
        family == "E" and rank not in (6, 7, 8)
    ):
        raise ValueError(f"not an ADE label: {label!r}")
    return family, rank


def normalize_label(label: str) -> str:
    family, rank = parse_label(label)
    return f"{family}{rank}"


def group_order(label: str) -> int:
    """Order of the local fundamental group G with (X, x) = C^2/G locally."""
    family, n = parse_label(label)
    if family == "A":
        return n + 1
    if family == "D":
        return 4 * (n - 2)
    return {6: 24, 7: 48, 8: 120}[n]


def dynkin_edges(label: str) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram on vertices 0..rank-1.

    D_n: chain 0..n-2 with n-1 attached to n-3.  E_n: chain 0,2,3,4,...,n-1
    with 1 attached to 3 (Bourbaki numbering shifted to 0).
    """
    family, n = parse_label(label)
    if family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    return [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]


def negative_cartan(label: str) -> list[list[int]]:
    """Intersection matrix of the exceptional curves: -2 on the diagonal, 1 on edges."""
    _, n = parse_label(label)
    m = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(label):
        m[i][j] = m[j][i] = 1
    return m


def classify_graph(matrix: Sequence[Sequence[int]]) -> str | None:
    """Return the ADE label whose negated Cartan matrix is ``matrix``, or None.

    The matrix must have -2 on the diagonal and 0/1 off it; the dual graph
    must be a tree that is a path (A_n) or has a single branch vertex with
    arm lengths (1,1,k) (D), (1,2,2), (1,2,3), (1,2,4) (E6, E7, E8).
    """
    n = len(matrix)
    if n == 0:
        return None
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        if matrix[i][i] != -2:
            return None
        for j in range(n):
            if i == j:
                continue
            if matrix[i][j] != matrix[j][i] or matrix[i][j] not in (0, 1):
                return None
            if matrix[i][j] == 1:
                adjacency[i].append(j)
    edges = sum(len(a) for a in adjacency) // 2
    if edges != n - 1 or not _connected(adjacency):
        return None
    degrees = Counter(len(a) for a in adjacency)
    if max(degrees) <= 2:
        return f"A{n}"
    branch = [v for v in range(n) if len(adjacency[v]) >= 3]
    if len(branch) != 1 or len(adjacency[branch[0]]) != 3:
        return None
    centre = branch[0]
    arms = sorted(_arm_length(adjacency, centre, start) for start in adjacency[centre])
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def _connected(adjacency: list[list[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adjacency)


def _arm_length(adjacency: list[list[int]], centre: int, start: int) -> int:
    length, prev, v = 1, centre, start
    while True:
        nxt = [w for w in adjacency[v] if w != prev]
        if not nxt:
            return length
        prev, v = v, nxt[0]
        length += 1
