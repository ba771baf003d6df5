"""Canonical byte keys for multiplicity quivers, up to vertex permutation.

Weighted color refinement partitions the vertices; the refinement is
individualized one vertex at a time inside the first non-singleton cell,
and the minimal adjacency serialization over all resulting discrete
orderings is the key.  Exact by construction, deterministic, and fast at
the sizes that occur here (n <= 11, the largest del Pezzo period).
"""

from __future__ import annotations

from .errors import InputError
from .quivers import Quiver

MAX_VERTICES = 11


def _refine(arrows, colors: list[int]) -> list[int]:
    """Stable weighted refinement: split color classes by the multiset of
    (neighbor color, out-multiplicity, in-multiplicity) signatures."""
    n = len(arrows)
    while True:
        sigs = []
        for v in range(n):
            sig = sorted(
                (colors[u], arrows[v][u], arrows[u][v])
                for u in range(n)
                if u != v
            )
            sigs.append((colors[v], tuple(sig)))
        order = sorted(set(sigs))
        new = [order.index(s) for s in sigs]
        if new == colors:
            return colors
        colors = new


def _serialize(arrows, order: list[int]) -> bytes:
    n = len(order)
    rows = ";".join(
        ",".join(str(arrows[i][j]) for j in order) for i in order
    )
    return f"{n}|{rows}".encode("ascii")


def _canonical_bytes(arrows, colors: list[int], best: list[bytes]) -> None:
    n = len(arrows)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        order = [v for _, v in sorted((colors[v], v) for v in range(n))]
        cand = _serialize(arrows, order)
        if best[0] is None or cand < best[0]:
            best[0] = cand
        return
    for v in target:
        branched = [2 * c for c in colors]
        branched[v] -= 1
        _canonical_bytes(arrows, _refine(arrows, branched), best)


def canonical_quiver_key(q: Quiver) -> bytes:
    """Key equal for exactly the vertex-permutation-isomorphic quivers."""
    if q.n > MAX_VERTICES:
        raise InputError(f"canonical keys support at most {MAX_VERTICES} vertices")
    if q.has_loops():
        raise InputError("canonical keys are defined for loop-free quivers")
    if q.n == 0:
        return bytes([0])
    colors = _refine(q.arrows, [0] * q.n)
    best: list[bytes] = [None]  # type: ignore[list-item]
    _canonical_bytes(q.arrows, colors, best)
    return best[0]
