import random

from mstcc.graphs import UnionFind, bridges, components, is_connected


def _edges(pairs):
    return {k: e for k, e in enumerate(pairs)}


def _naive_bridges(vertices, edges):
    vertices = list(vertices)
    return {k for k in edges
            if not is_connected(vertices, {j: e for j, e in edges.items() if j != k})}


def test_path_edges_are_bridges():
    assert bridges([1, 2, 3], _edges([(1, 2), (2, 3)])) == {0, 1}


def test_triangle_has_no_bridges():
    assert bridges([1, 2, 3], _edges([(1, 2), (2, 3), (1, 3)])) == set()


def test_parallel_edges_are_not_bridges():
    assert bridges([1, 2, 3], _edges([(1, 2), (1, 2), (2, 3)])) == {2}


def test_bridges_match_removal_check():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(2, 8)
        pairs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(1, 12))]
        edges = _edges([(u, v) for u, v in pairs if u != v])
        if not is_connected(range(1, n + 1), edges):
            continue
        assert bridges(range(1, n + 1), edges) == _naive_bridges(range(1, n + 1), edges)


def test_components_and_union_find():
    comps = components([1, 2, 3, 4, 5], _edges([(1, 2), (4, 5)]))
    assert sorted(map(sorted, comps)) == [[1, 2], [3], [4, 5]]
    uf = UnionFind([1, 2, 3])
    assert uf.union(1, 2)
    assert not uf.union(2, 1)
    assert uf.find(2) == uf.find(1)
    assert uf.find(3) == 3
