import random

import pytest

from conftest import random_tree_mixture
from mstcc.instance_io import Instance
from mstcc.oracle import naive_sec_violation, spanning_trees
from mstcc.sec import is_integral, separate_sec, separate_sec_fractional, separate_sec_integral


def _graph(n, pairs):
    return Instance(n, tuple((u, v, 1) for u, v in pairs))


def test_tree_indicator_has_no_cut():
    inst = _graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert separate_sec_integral(inst, [1, 1, 1, 0]) == []


def test_integral_triangle_and_isolated_vertex():
    inst = _graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    cuts = separate_sec_integral(inst, [1, 1, 1, 0])
    assert len(cuts) == 1
    assert cuts[0].members == (1, 2, 3)
    assert cuts[0].violation == pytest.approx(1.0)


def test_mixture_of_two_trees_is_clean():
    inst = _graph(4, [(1, 2), (3, 4), (2, 3), (1, 4)])
    assert separate_sec_fractional(inst, [1, 1, 0.5, 0.5]) == []


def test_five_vertex_example():
    inst = _graph(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5)])
    cuts = separate_sec_fractional(inst, [0.75, 0.75, 0.75, 1.0, 0.75])
    assert [c.members for c in cuts] == [(1, 2, 3)]
    assert cuts[0].violation == pytest.approx(0.25)
    assert naive_sec_violation(inst, [0.75, 0.75, 0.75, 1.0, 0.75])[1] == frozenset({1, 2, 3})


def test_point_on_tree_support_is_clean():
    inst = _graph(4, [(1, 2), (2, 3), (3, 4), (1, 3)])
    assert separate_sec_fractional(inst, [0.5, 1.0, 1.0, 0.5]) == []


def test_triangle_plus_cycle_needs_exact_network():
    # every rooted cut of the plain capacity network is at least 1 here
    inst = _graph(6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 3)])
    x = [1, 1, 1, 0.5, 0.5, 0.5, 0.5]
    cuts = separate_sec(inst, x)
    assert any(c.members == (1, 2, 3) for c in cuts)
    assert max(c.violation for c in cuts) == pytest.approx(1.0)


def test_is_integral():
    assert is_integral([0.0, 1.0, 0.999999])
    assert not is_integral([0.5, 1.0])


def test_agrees_with_subset_scan():
    rng = random.Random(8)
    hits = 0
    for _ in range(150):
        n = rng.randint(3, 9)
        inst, x = random_tree_mixture(rng, n, rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n)))
        ref = naive_sec_violation(inst, x)
        cuts = separate_sec(inst, x)
        assert bool(cuts) == (ref is not None)
        if ref is not None:
            hits += 1
            assert max(c.violation for c in cuts) == pytest.approx(ref[0], abs=1e-7)
        for c in cuts:
            assert c.violation > 1e-5
            assert c.violation == pytest.approx(c.violation_at(x))
    assert hits > 20


def test_emitted_cuts_hold_for_every_spanning_tree():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(3, 6)
        inst, x = random_tree_mixture(rng, n, rng.randint(n, min(n * (n - 1) // 2, 9)))
        cuts = separate_sec(inst, x)
        for tree in spanning_trees(inst):
            ind = [1.0 if k in tree else 0.0 for k in range(inst.m)]
            assert all(c.violation_at(ind) <= 1e-9 for c in cuts)
