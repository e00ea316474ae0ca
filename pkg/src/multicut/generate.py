"""Seeded instance generators."""

from __future__ import annotations

import random
from itertools import combinations

from multicut.graph import Instance

KINDS = ("random", "star", "tree", "theta", "subdivided")


def _requests(rng: random.Random, vertices, r: int) -> list:
    pairs = list(combinations(sorted(vertices), 2))
    rng.shuffle(pairs)
    return sorted(pairs[: min(r, len(pairs))])


def random_instance(rng: random.Random, n: int, m: int, r: int, k: int) -> Instance:
    edges = []
    if n >= 2:
        for _ in range(m):
            u, v = rng.sample(range(1, n + 1), 2)
            edges.append((u, v))
    return Instance.build(n, edges, _requests(rng, range(1, n + 1), r), k)


def star_instance(rng: random.Random, n: int, r: int, k: int) -> Instance:
    """Center 1 joined to leaves 2..n; requests among leaves."""
    edges = [(1, v) for v in range(2, n + 1)]
    return Instance.build(n, edges, _requests(rng, range(2, n + 1), r), k)


def tree_instance(rng: random.Random, n: int, r: int, k: int) -> Instance:
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    return Instance.build(n, edges, _requests(rng, range(1, n + 1), r), k)


def theta_instance(rng: random.Random, n: int, paths: int, r: int, k: int) -> Instance:
    """Hubs 1 and 2 joined by ``paths`` internally disjoint paths through 3..n."""
    paths = max(2, paths)
    routes = [[] for _ in range(paths)]
    for v in range(3, n + 1):
        routes[rng.randrange(paths)].append(v)
    edges = []
    for route in routes:
        chain = [1, *route, 2]
        edges += list(zip(chain, chain[1:]))
    return Instance.build(max(n, 2), edges, _requests(rng, range(1, max(n, 2) + 1), r), k)


def subdivided_instance(rng: random.Random, n: int, m: int, r: int, k: int) -> Instance:
    """A random multigraph on a few branch vertices with every edge subdivided at random."""
    branch = max(2, n // 3)
    base = []
    for _ in range(max(1, m)):
        base.append(tuple(rng.sample(range(1, branch + 1), 2)))
    inner = [[] for _ in base]
    for v in range(branch + 1, n + 1):
        inner[rng.randrange(len(base))].append(v)
    edges = []
    for (a, b), route in zip(base, inner):
        chain = [a, *route, b]
        edges += list(zip(chain, chain[1:]))
    total = max(n, branch)
    return Instance.build(total, edges, _requests(rng, range(1, total + 1), r), k)


def generate(kind: str, n: int, m: int = 0, r: int = 1, k: int = 1, seed: int = 0) -> Instance:
    rng = random.Random(f"{kind}:{n}:{m}:{r}:{k}:{seed}")
    if kind == "random":
        return random_instance(rng, n, m, r, k)
    if kind == "star":
        return star_instance(rng, n, r, k)
    if kind == "tree":
        return tree_instance(rng, n, r, k)
    if kind == "theta":
        return theta_instance(rng, n, m or 3, r, k)
    if kind == "subdivided":
        return subdivided_instance(rng, n, m or 3, r, k)
    raise ValueError(f"unknown generator kind {kind!r}")
