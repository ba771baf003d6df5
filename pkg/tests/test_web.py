from __future__ import annotations

import json

import pytest

from helixweb import InputError, Quiver, seed_helix
from helixweb.canonical import canonical_quiver_key
from helixweb.jsonio import dumps
from helixweb.quivers import vertex_bijection
from helixweb.helices import tilt
from helixweb.web import web_bfs

SQUARE = Quiver(((0, 2, 2, 0), (0, 0, 0, 2), (0, 0, 0, 2), (4, 0, 0, 0)))
CYCLE = Quiver(((0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (2, 0, 0, 0)))


class TestWebBfs:
    def test_depth_zero(self, quadric_seed):
        graph = web_bfs(quadric_seed, 0)
        assert len(graph.nodes) == 1
        assert graph.edges == []

    def test_depth_one_contains_both_figures(self, quadric_seed):
        graph = web_bfs(quadric_seed, 1)
        keys = {n.key for n in graph.nodes}
        assert canonical_quiver_key(SQUARE) in keys
        assert canonical_quiver_key(CYCLE) in keys
        assert len(graph.edges) == 4

    def test_plane_web_markov_structure(self):
        graph = web_bfs(seed_helix("p2"), 3)
        for node in graph.nodes:
            q = node.quiver
            assert q.n == 3
            assert not q.has_loops()
            assert not q.has_two_cycles()
            # every pair of vertices is joined in exactly one direction
            for i in range(3):
                for j in range(i + 1, 3):
                    assert (q.arrows[i][j] > 0) != (q.arrows[j][i] > 0)
            b = node.b
            assert all(b.b[i][j] == -b.b[j][i] for i in range(3) for j in range(3))

    def test_every_node_geometric(self):
        from helixweb import is_geometric

        for name in ("quadric", "dp1"):
            graph = web_bfs(seed_helix(name), 2)
            for node in graph.nodes:
                assert is_geometric(node.helix)

    def test_edge_round_trip(self, quadric_seed):
        # re-tilting across an edge returns a node with the source's key
        graph = web_bfs(quadric_seed, 2)
        for src, vertex, dst in graph.edges:
            helix = graph.nodes[src].helix
            forward = tilt(helix, vertex)
            psi = vertex_bijection(helix, forward, vertex)
            back = tilt(forward, psi[vertex])
            from helixweb.quivers import helix_quiver

            assert canonical_quiver_key(helix_quiver(back)) == graph.nodes[src].key

    def test_determinism(self, quadric_seed):
        a = dumps(web_bfs(quadric_seed, 2).to_json())
        b = dumps(web_bfs(seed_helix("quadric"), 2).to_json())
        assert a == b

    def test_dot_output(self, quadric_seed):
        dot = web_bfs(quadric_seed, 1).to_dot()
        assert dot.startswith("digraph web {")
        assert '[label="tilt 0"]' in dot

    def test_json_shape(self, quadric_seed):
        payload = web_bfs(quadric_seed, 1).to_json()
        text = json.dumps(payload)
        assert json.loads(text) == payload
        for node in payload["nodes"]:
            assert set(node) == {"index", "key", "depth", "helix", "quiver", "b_matrix"}
        for edge in payload["edges"]:
            assert set(edge) == {"source", "vertex", "target"}

    def test_rejects_bad_seed(self, quadric):
        from conftest import lines
        from helixweb import Helix

        bad = Helix(lines(quadric, (0, 0), (1, 0), (3, 1), (4, 1)))
        with pytest.raises(InputError):
            web_bfs(bad, 1)

    def test_negative_depth(self, quadric_seed):
        with pytest.raises(InputError):
            web_bfs(quadric_seed, -1)
