"""Breadth-first exploration of the tilt web of a geometric helix.

Nodes are isomorphism classes of rolled-up quivers, identified by their
canonical keys and represented by the first helix that reached them;
edges record which vertex was tilted.  Every expansion runs the full
tilt/mutation cross-check, so a finished web certifies the mutation
rule on each of its edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .canonical import canonical_quiver_key
from .errors import InputError, InvariantBreach
from .helices import Helix, geometric_failure
from .jsonio import bmatrix_to_json, helix_to_json, quiver_to_json
from .quivers import BMatrix, Quiver, cross_check_tilt, helix_quiver, rolled_b_matrix


@dataclass
class WebNode:
    index: int
    key: bytes
    helix: Helix
    quiver: Quiver
    b: BMatrix
    depth: int


@dataclass
class WebGraph:
    seed: Helix
    depth: int
    nodes: list[WebNode] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    _by_key: dict[bytes, int] = field(default_factory=dict)

    def node_for(self, key: bytes) -> int | None:
        return self._by_key.get(key)

    def add_node(self, helix: Helix, depth: int) -> tuple[int, bool]:
        q = helix_quiver(helix)
        key = canonical_quiver_key(q)
        existing = self._by_key.get(key)
        if existing is not None:
            return existing, False
        node = WebNode(len(self.nodes), key, helix, q, rolled_b_matrix(helix), depth)
        self.nodes.append(node)
        self._by_key[key] = node.index
        return node.index, True

    def to_json(self) -> dict[str, Any]:
        return {
            "depth": self.depth,
            "nodes": [
                {
                    "index": n.index,
                    "key": n.key.hex(),
                    "depth": n.depth,
                    "helix": helix_to_json(n.helix),
                    "quiver": quiver_to_json(n.quiver),
                    "b_matrix": bmatrix_to_json(n.b),
                }
                for n in self.nodes
            ],
            "edges": [
                {"source": s, "vertex": v, "target": t} for s, v, t in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph web {"]
        for n in self.nodes:
            label = " | ".join(o.describe() for o in n.helix.thread.objects)
            lines.append(f'  n{n.index} [label="{n.index}: {label}"];')
        for s, v, t in self.edges:
            lines.append(f'  n{s} -> n{t} [label="tilt {v}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def web_bfs(seed: Helix, depth: int) -> WebGraph:
    """Closure of the seed under vertex tilts, to the given depth.

    Deterministic: nodes are numbered in discovery order, expanding
    vertices in increasing order.  Aborts with a diagnostic if any tilt
    fails the mutation cross-check or produces a non-geometric helix.
    """
    if depth < 0:
        raise InputError("depth must be non-negative")
    failure = geometric_failure(seed)
    if failure is not None:
        raise InputError(f"web exploration needs a geometric seed: {failure}")
    graph = WebGraph(seed, depth)
    graph.add_node(seed, 0)
    frontier = [0]
    for level in range(depth):
        next_frontier: list[int] = []
        for src in frontier:
            helix = graph.nodes[src].helix
            for vertex in range(helix.n):
                report = cross_check_tilt(helix, vertex)
                if not report.match:
                    raise InvariantBreach(
                        f"tilt/mutation mismatch at node {src}, vertex {vertex}: "
                        f"helix {helix.describe()}"
                    )
                dst, fresh = graph.add_node(report.tilted, level + 1)
                graph.edges.append((src, vertex, dst))
                if fresh:
                    next_frontier.append(dst)
        frontier = next_frontier
        if not frontier:
            break
    return graph
