"""Seeded random instances for the self-test and the test suite."""
from __future__ import annotations

import heapq
import random
from fractions import Fraction
from typing import List

from .extension import ExtensionProblem
from .free import FreeElement
from .metric import FiniteMetricSpace


def line_space(rng: random.Random, max_points: int = 30, exact: bool = False, span: int = 100):
    n = rng.randint(1, max_points)
    coords = sorted(rng.sample(range(-span, span + 1), n))
    return FiniteMetricSpace.from_line_points(coords, base=rng.randrange(n), exact=exact)


def planar_space(rng: random.Random, max_points: int = 25, exact: bool = False):
    n = rng.randint(2, max_points)
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(0, 40), rng.randint(0, 40)))
    pts = sorted(pts)
    return FiniteMetricSpace.from_points(pts, base=rng.randrange(n), exact=exact)


def graph_space(rng: random.Random, max_points: int = 8, exact: bool = True, p: float = 0.4):
    """Shortest-path metric of a random connected graph with integer weights.

    Rational distances with plenty of metric triples, which is what the
    exact-mode checks need.
    """
    n = rng.randint(2, max_points)
    adj = {i: {} for i in range(n)}
    order = list(range(n))
    rng.shuffle(order)
    for k in range(1, n):
        a, b = order[k], order[rng.randrange(k)]
        adj[a][b] = adj[b][a] = rng.randint(1, 6)
    for a in range(n):
        for b in range(a + 1, n):
            if b not in adj[a] and rng.random() < p:
                adj[a][b] = adj[b][a] = rng.randint(1, 6)
    dist = []
    for s in range(n):
        best = {s: 0}
        heap = [(0, s)]
        while heap:
            dv, v = heapq.heappop(heap)
            if dv > best[v]:
                continue
            for u, w in adj[v].items():
                if dv + w < best.get(u, 1 << 60):
                    best[u] = dv + w
                    heapq.heappush(heap, (dv + w, u))
        dist.append([best[t] for t in range(n)])
    return FiniteMetricSpace.from_matrix(dist, base=rng.randrange(n), exact=exact)


def snowflake_space(rng: random.Random, max_points: int = 8, exact: bool = False):
    if rng.random() < 0.5:
        base = line_space(rng, max_points, exact)
    else:
        base = planar_space(rng, max_points, exact)
    return base.snowflake(rng.choice([0.25, 0.5, 0.75]))


def small_space(rng: random.Random, max_points: int = 6, exact: bool = True):
    kind = rng.random()
    if kind < 0.4:
        return graph_space(rng, max_points, exact)
    if kind < 0.7:
        return line_space(rng, max_points, exact, span=8)
    if exact:
        return graph_space(rng, max_points, exact, p=0.8)
    return planar_space(rng, max_points)


def element(
    rng: random.Random, space: FiniteMetricSpace, density: float = 0.7, denominators=(1, 2, 3, 4)
) -> FreeElement:
    """Random weights k/q; dyadic denominators keep float arithmetic on them exact."""
    w = {}
    for i in range(space.n):
        if i != space.base and rng.random() < density:
            v = Fraction(rng.randint(-12, 12), rng.choice(denominators))
            w[i] = v if space.exact else float(v)
    return FreeElement.from_weights(space, w)


def positive_measure_weights(rng: random.Random, space: FiniteMetricSpace, total: Fraction):
    k = rng.randint(1, space.n)
    pts = rng.sample(range(space.n), k)
    raw = [rng.randint(1, 5) for _ in pts]
    s = sum(raw)
    return {p: Fraction(r * total.numerator, s * total.denominator) for p, r in zip(pts, raw)}


def pair_set(rng: random.Random, space: FiniteMetricSpace, max_pairs: int = 5) -> List[tuple]:
    if space.n < 2:
        return []
    k = min(rng.randint(1, max_pairs), space.n * (space.n - 1))
    out = set()
    while len(out) < k:
        x, y = rng.sample(range(space.n), 2)
        out.add((x, y))
    return sorted(out)


def lipschitz_values(rng: random.Random, space: FiniteMetricSpace):
    """Values of a random 1-Lipschitz function, often with many tight pairs."""
    d = space.dist
    n = space.n
    kind = rng.random()
    if kind < 0.4:
        a = rng.randrange(n)
        sign = rng.choice([1, -1])
        return [sign * d[x][a] for x in range(n)]
    cones = [
        (rng.randrange(n), Fraction(rng.randint(-10, 10), rng.randint(1, 3)))
        for _ in range(rng.randint(1, 4))
    ]
    if not space.exact:
        cones = [(a, float(c)) for a, c in cones]
    return [min(c + d[x][a] for a, c in cones) for x in range(n)]


def extension_problem(rng: random.Random, space: FiniteMetricSpace) -> ExtensionProblem:
    vals = lipschitz_values(rng, space)
    k = rng.randint(1, space.n)
    A = sorted(rng.sample(range(space.n), k))
    return ExtensionProblem.build(space, {a: vals[a] for a in A})
