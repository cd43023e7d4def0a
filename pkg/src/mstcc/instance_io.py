"""Instance model, text format, validation and random instance families.

File format (UTF-8, one record per line, ``#`` starts a comment)::

    n m p
    u v cost        # m lines, vertices numbered 1..n
    i j             # p lines, conflicting edges by 1-based listing order

Inside Python, edges are addressed by their 0-based position in
``Instance.edges``; only the text format uses 1-based edge numbers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

TYPE1 = "type1"
TYPE2 = "type2"


class InstanceFormatError(ValueError):
    """Raised by :func:`parse_instance`; ``kind`` names the failed check."""

    def __init__(self, kind: str, line: int | None, message: str):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{kind}: {message}")
        self.kind = kind
        self.line = line


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class Instance:
    """Weighted multigraph on vertices 1..n plus conflicting edge pairs.

    ``conflicts`` holds pairs ``(i, j)`` with ``i < j`` of 0-based edge
    positions.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    conflicts: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(
            self, "conflicts",
            frozenset((min(a, b), max(a, b)) for a, b in self.conflicts),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def p(self) -> int:
        return len(self.conflicts)

    @property
    def name(self) -> str:
        return f"{self.n}-{self.m}-{self.p}"

    def cost(self, edge_ids: Iterable[int]) -> int:
        return sum(self.edges[e][2] for e in edge_ids)

    def conflict_adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.m)]
        for a, b in self.conflicts:
            adj[a].add(b)
            adj[b].add(a)
        return adj


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    m: int
    p: int
    family: str = TYPE1
    cost_range: tuple[int, int] = (1, 100)
    seed: int = 0

    def check(self) -> None:
        if self.n < 1:
            raise GeneratorError("n must be positive")
        if not self.n - 1 <= self.m <= self.n * (self.n - 1) // 2:
            raise GeneratorError(f"m={self.m} outside [n-1, n(n-1)/2] for n={self.n}")
        if not 0 <= self.p <= self.m * (self.m - 1) // 2:
            raise GeneratorError(f"p={self.p} exceeds m(m-1)/2")
        lo, hi = self.cost_range
        if not 1 <= lo <= hi:
            raise GeneratorError(f"bad cost range {self.cost_range}")
        if self.family not in (TYPE1, TYPE2):
            raise GeneratorError(f"unknown family {self.family!r}")


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(tokens) != count:
        raise InstanceFormatError("MalformedLine", lineno,
                                  f"{what} needs {count} integers, got {len(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError("MalformedLine", lineno,
                                  f"{what} has a non-integer field") from None


def parse_instance(text: str) -> Instance:
    lines = list(_tokens(text))
    if not lines:
        raise InstanceFormatError("MalformedHeader", None, "empty instance")
    lineno, head = lines[0]
    n, m, p = _ints(head, 3, lineno, "header")
    if n < 1 or m < 0 or p < 0:
        raise InstanceFormatError("MalformedHeader", lineno, "counts must be n>=1, m>=0, p>=0")
    body = lines[1:]
    if len(body) != m + p:
        last = body[-1][0] if body else lineno
        raise InstanceFormatError("CountMismatch", last,
                                  f"expected {m} edge and {p} conflict lines, found {len(body)} records")

    edges = []
    for lineno, toks in body[:m]:
        u, v, c = _ints(toks, 3, lineno, "edge")
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceFormatError("VertexOutOfRange", lineno, f"edge ({u}, {v}) with n={n}")
        if u == v:
            raise InstanceFormatError("SelfLoop", lineno, f"edge ({u}, {v})")
        edges.append((u, v, c))

    conflicts: set[tuple[int, int]] = set()
    for lineno, toks in body[m:]:
        i, j = _ints(toks, 2, lineno, "conflict")
        if i == j:
            raise InstanceFormatError("DuplicateEdgeInPair", lineno, f"pair ({i}, {j})")
        if not (1 <= i <= m and 1 <= j <= m):
            raise InstanceFormatError("BadEdgeIndex", lineno, f"pair ({i}, {j}) with m={m}")
        key = (min(i, j) - 1, max(i, j) - 1)
        if key in conflicts:
            raise InstanceFormatError("DuplicateConflictPair", lineno, f"pair ({i}, {j}) repeated")
        conflicts.add(key)
    return Instance(n, tuple(edges), frozenset(conflicts))


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance) -> str:
    out = [f"# instance {inst.name}", f"{inst.n} {inst.m} {inst.p}"]
    out += [f"{u} {v} {c}" for u, v, c in inst.edges]
    out += [f"{a + 1} {b + 1}" for a, b in sorted(inst.conflicts)]
    return "\n".join(out) + "\n"


def _connected(n: int, edges) -> bool:
    if n <= 1:
        return True
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v, _ in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def validate(inst: Instance) -> list[Violation]:
    """Return every invariant violation; an empty list means valid.

    A disconnected graph is reported as ``Disconnected``: no spanning tree
    exists, so the instance is structurally infeasible.
    """
    found = []
    if inst.n < 1:
        found.append(Violation("BadVertexCount", f"n={inst.n}"))
    for k, (u, v, c) in enumerate(inst.edges):
        if not (1 <= u <= inst.n and 1 <= v <= inst.n):
            found.append(Violation("VertexOutOfRange", f"edge {k + 1} = ({u}, {v})"))
        elif u == v:
            found.append(Violation("SelfLoop", f"edge {k + 1} = ({u}, {v})"))
        if not isinstance(c, int):
            found.append(Violation("NonIntegerCost", f"edge {k + 1} cost {c!r}"))
    for a, b in sorted(inst.conflicts):
        if a == b:
            found.append(Violation("DuplicateEdgeInPair", f"pair ({a + 1}, {b + 1})"))
        if not (0 <= a < inst.m and 0 <= b < inst.m):
            found.append(Violation("BadEdgeIndex", f"pair ({a + 1}, {b + 1}) with m={inst.m}"))
    if not any(v.kind == "VertexOutOfRange" for v in found) and not _connected(inst.n, inst.edges):
        found.append(Violation("Disconnected", "graph has no spanning tree"))
    return found


def generate_instance_with_tree(spec: GeneratorSpec) -> tuple[Instance, list[int]]:
    """Generate an instance and return it with the seeded spanning tree.

    The tree is a random labelled tree; the remaining ``m - n + 1`` edges are
    drawn uniformly among absent vertex pairs and the edge list is shuffled.
    Type-2 conflicts never pair two tree edges, so the tree certifies
    feasibility.
    """
    spec.check()
    rng = random.Random(spec.seed)
    n, m, p = spec.n, spec.m, spec.p

    order = list(range(1, n + 1))
    rng.shuffle(order)
    pairs = []
    for k in range(1, n):
        parent = order[rng.randrange(k)]
        pairs.append((parent, order[k]))
    present = {frozenset(e) for e in pairs}
    absent = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
              if frozenset((u, v)) not in present]
    pairs += rng.sample(absent, m - (n - 1))

    perm = list(range(m))
    rng.shuffle(perm)
    lo, hi = spec.cost_range
    edges = [None] * m
    for k, slot in enumerate(perm):
        u, v = pairs[k]
        if rng.random() < 0.5:
            u, v = v, u
        edges[slot] = (u, v, rng.randint(lo, hi))
    tree = sorted(perm[: n - 1])

    if spec.family == TYPE1:
        candidates = None
        total = m * (m - 1) // 2
    else:
        in_tree = set(tree)
        candidates = [(a, b) for a in range(m) for b in range(a + 1, m)
                      if not (a in in_tree and b in in_tree)]
        total = len(candidates)
        if p > total:
            raise GeneratorError(f"type2 allows at most {total} conflict pairs, asked for {p}")

    picks = rng.sample(range(total), p)
    if candidates is not None:
        conflicts = {candidates[k] for k in picks}
    else:
        conflicts = {_unrank_pair(k, m) for k in picks}
    return Instance(n, tuple(edges), frozenset(conflicts)), tree


def generate_instance(spec: GeneratorSpec) -> Instance:
    return generate_instance_with_tree(spec)[0]


def _unrank_pair(k: int, m: int) -> tuple[int, int]:
    # row-major index over {(a, b): 0 <= a < b < m}
    a = 0
    while k >= m - 1 - a:
        k -= m - 1 - a
        a += 1
    return a, a + 1 + k
