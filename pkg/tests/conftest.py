import random

from mstcc.instance_io import TYPE1, TYPE2, GeneratorSpec, Instance, generate_instance


def k3() -> Instance:
    return Instance(3, ((1, 2, 1), (2, 3, 2), (1, 3, 3)), frozenset({(0, 1)}))


def star_conflict() -> Instance:
    return Instance(4, ((1, 2, 1), (1, 3, 1), (1, 4, 1)), frozenset({(0, 1)}))


def small_instance(rng: random.Random, n_range=(4, 8), max_m=14, max_p=12) -> Instance:
    """Connected random instance drawn from the mixed Type1/Type2 corpus."""
    while True:
        n = rng.randint(*n_range)
        m = rng.randint(n - 1, min(max_m, n * (n - 1) // 2))
        p = rng.randint(0, min(max_p, m * (m - 1) // 2))
        family = rng.choice([TYPE1, TYPE2])
        spec = GeneratorSpec(n, m, p, family, (1, rng.choice([5, 20, 100])), rng.randrange(10**9))
        try:
            return generate_instance(spec)
        except ValueError:
            continue


def random_conflict_graph(rng: random.Random, n_nodes: int, density: float):
    return [(a, b) for a in range(n_nodes) for b in range(a + 1, n_nodes) if rng.random() < density]


def stable_point(rng: random.Random, n_nodes: int, pairs):
    """Random point in [0, 1]^n satisfying every pair row, biased to fractional values."""
    x = []
    for _ in range(n_nodes):
        r = rng.random()
        if r < 0.15:
            x.append(0.0)
        elif r < 0.25:
            x.append(1.0)
        elif r < 0.6:
            x.append(0.5)
        else:
            x.append(round(rng.uniform(0.2, 0.6), 3))
    for a, b in pairs:
        if x[a] + x[b] > 1.0:
            if x[a] >= x[b]:
                x[a] = 1.0 - x[b]
            else:
                x[b] = 1.0 - x[a]
    return x


def random_tree_mixture(rng: random.Random, n: int, m: int):
    """Random graph and a point with sum(x) = n - 1 mixing trees and cyclic sets."""
    edges = set()
    for v in range(2, n + 1):
        edges.add((rng.randint(1, v - 1), v))
    while len(edges) < m:
        u, v = sorted(rng.sample(range(1, n + 1), 2))
        edges.add((u, v))
    inst = Instance(n, tuple((u, v, 1) for u, v in sorted(edges)))
    x = [0.0] * inst.m
    parts = rng.randint(1, 3)
    weights = [rng.randint(1, 4) for _ in range(parts)]
    for w in weights:
        # n - 1 edges, not necessarily a tree, so some mixtures violate an SEC
        for k in rng.sample(range(inst.m), n - 1):
            x[k] += w / sum(weights)
    return inst, [min(1.0, v) for v in x]


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
