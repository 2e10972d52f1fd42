"""Mutation-graph exploration: counts, caps, fork-less part, entry growth."""

import json
import random

import pytest

from clusterdeep.errors import ExplorationExceeded
from clusterdeep.explore import (
    ExplorationReport,
    canonical_representative,
    explore_quivers,
    explore_seeds,
    forkless_part,
    verify_entry_growth,
)
from clusterdeep.quiver import (
    IceQuiver,
    is_fork,
    path_quiver,
    star_quiver,
    triangle_quiver,
)

from helpers import brute_cluster_sets


def test_a2_quiver_counts_both_granularities():
    q = path_quiver(2)
    # the two labeled matrices 1->2 and 2->1 are one quiver up to relabeling
    rep = explore_quivers(q, 8, 100, dedup="canonical")
    assert rep.node_count == 1
    assert rep.frontier_exhausted
    assert rep.edges == ((0, 0, 0), (0, 1, 0))
    rep = explore_quivers(q, 8, 100, dedup="matrix")
    assert rep.node_count == 2
    assert rep.frontier_exhausted
    assert rep.caps_hit == ()
    assert rep.edges == ((0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0))


def test_star_depth_four_entry_floor():
    # every node within four mutations keeps the center weights at or above
    # their starting sizes, with matrix dedup so positions stay meaningful
    rep = explore_quivers(star_quiver(2, 3), 4, 10000, dedup="matrix")
    assert rep.frontier_exhausted or "max_depth" in rep.caps_hit
    for node in rep.nodes:
        assert abs(node.entry(0, 1)) >= 3
        assert abs(node.entry(0, 2)) >= 2


def test_caps_reported():
    rep = explore_quivers(star_quiver(2, 3), 3, 1)
    assert rep.node_count == 1
    assert "max_nodes" in rep.caps_hit
    assert not rep.frontier_exhausted
    assert rep.edges == ()
    with pytest.raises(ValueError):
        explore_quivers(star_quiver(2, 3), 0, 10)
    with pytest.raises(ValueError):
        explore_quivers(star_quiver(2, 3), 3, 10, dedup="bogus")


def test_a2_five_seeds_pentagon():
    rep = explore_seeds(path_quiver(2), 12, 100)
    assert rep.node_count == 5
    assert rep.frontier_exhausted
    adjacency = {frozenset((a, b)) for (a, k, b) in rep.edges}
    assert len(rep.edges) == 10 and len(adjacency) == 5
    degree = {}
    for pair in adjacency:
        for v in pair:
            degree[v] = degree.get(v, 0) + 1
    assert all(degree[i] == 2 for i in range(5))


def test_one_mutable_one_frozen_two_seeds():
    q = IceQuiver.from_arrows(1, 1, [(1, 0, 1)])
    rep = explore_seeds(q, 6, 50)
    assert rep.node_count == 2
    assert rep.frontier_exhausted
    assert rep.edges == ((0, 0, 1), (1, 0, 0))


def test_a3_seed_count_against_brute_oracle():
    q = path_quiver(3)
    rep = explore_seeds(q, 16, 500)
    assert rep.frontier_exhausted
    oracle = brute_cluster_sets([list(r) for r in q.matrix], 3, 0, 16)
    assert rep.node_count == len(oracle) == 14
    ours = {frozenset(s.cluster[: s.quiver.n]) for s in rep.nodes}
    assert ours == set(oracle)


def test_star_seed_counts_grow_with_depth():
    q = star_quiver(2, 3)
    counts = [explore_seeds(q, d, 100000).node_count for d in (1, 2, 3)]
    assert counts[0] < counts[1] < counts[2]


def test_quiver_classes_at_most_seed_count():
    rng = random.Random(20240817)
    for _ in range(12):
        n = rng.choice([2, 3])
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                w = rng.randint(-2, 2)
                rows[i][j] = w
                rows[j][i] = -w
        m = rng.choice([0, 1])
        for _ in range(m):
            rows.append([rng.randint(-1, 1) for _ in range(n)])
        q = IceQuiver(n, m, rows)
        kq = explore_quivers(q, 3, 100000, dedup="canonical").node_count
        ks = explore_seeds(q, 3, 100000).node_count
        assert kq <= ks


def test_edges_closed_and_involutive():
    q = star_quiver(1, 2)
    rep = explore_quivers(q, 3, 1000, dedup="matrix")
    for (a, k, b) in rep.edges:
        assert a < rep.node_count and b < rep.node_count
        assert rep.nodes[a].mutate(k).matrix == rep.nodes[b].matrix
        # matrix dedup keeps labels, so the reverse uses the same direction
        assert (b, k, a) in rep.edges
    seeds = explore_seeds(path_quiver(2), 12, 100)
    forward = {(a, b) for (a, k, b) in seeds.edges}
    assert all((b, a) in forward for (a, b) in forward)


def test_forkless_part_of_fork_is_empty():
    q = triangle_quiver(3, 5, 4)
    assert is_fork(q) is not None
    assert forkless_part(q, 50) == set()


def test_forkless_part_a2_whole_class():
    part = forkless_part(path_quiver(2), 50, dedup="matrix")
    assert len(part) == 2
    part = forkless_part(path_quiver(2), 50)
    assert len(part) == 1
    assert all(is_fork(x) is None for x in part)


def test_forkless_part_matches_class_when_no_forks():
    q = path_quiver(3)
    part = forkless_part(q, 1000)
    assert all(is_fork(x) is None for x in part)
    rep = explore_quivers(q, 32, 1000)
    assert rep.frontier_exhausted
    assert len(part) == rep.node_count
    assert part == {canonical_representative(x) for x in rep.nodes}


def test_forkless_part_cap_raises():
    with pytest.raises(ExplorationExceeded):
        forkless_part(path_quiver(3), 1)


def test_growth_default_bound_on_star():
    rep = verify_entry_growth(star_quiver(2, 3), max_depth=4)
    assert rep.ok
    assert rep.nodes_checked > 10


def test_growth_divisibility_pattern_on_star():
    def keeps_pattern(node, i, j):
        v = node.entry(i, j)
        step = 3 if (i, j) == (0, 1) else 2
        return v != 0 and v % step == 0

    rep = verify_entry_growth(
        star_quiver(2, 3), pairs=[(0, 1), (0, 2)],
        bound_fn=keeps_pattern, max_depth=4,
    )
    assert rep.ok


def test_growth_immediate_counterexample():
    rep = verify_entry_growth(
        path_quiver(2), pairs=[(0, 1)],
        bound_fn=lambda node, i, j: abs(node.entry(i, j)) >= 2,
        max_depth=3,
    )
    assert not rep.ok
    assert rep.word == ()
    assert rep.pair == (0, 1)
    assert rep.counterexample.matrix == path_quiver(2).matrix
    doc = rep.to_json_dict()
    assert doc["pair"] == [1, 2]


def test_exports_dot_and_json():
    rep = explore_seeds(path_quiver(2), 12, 100)
    dot = rep.to_dot()
    assert dot.startswith("graph")
    assert dot.count(" -- ") == 5
    assert '"start"' in dot
    doc = json.loads(rep.to_json())
    assert doc["kind"] == "seed"
    assert doc["node_count"] == 5
    assert len(doc["nodes"]) == 5
    assert all(len(e) == 3 for e in doc["edges"])
    qrep = explore_quivers(star_quiver(2, 3), 2, 50)
    qdoc = qrep.to_json_dict()
    assert qdoc["kind"] == "quiver"
    assert qdoc["nodes"][0] == star_quiver(2, 3).to_json_dict()
    assert all(all(k >= 1 for k in w) for w in qdoc["words"])
