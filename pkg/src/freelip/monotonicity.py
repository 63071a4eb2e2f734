"""Cyclical monotonicity of sets of pairs, with certificates.

A set E of off-diagonal pairs is cyclically monotonic when for every
choice of distinct pairs (x_1,y_1), ..., (x_n,y_n) in E

    d(x_1,y_1) + ... + d(x_n,y_n) <= d(x_1,y_2) + ... + d(x_n,y_1).

Equivalently some f with f(base) = 0 and Lipschitz constant at most 1 has
f(x) - f(y) = d(x, y) on all of E. :func:`check_monotone_lp` searches for
such an f as a system of difference constraints; :func:`check_monotone_bruteforce`
enumerates cycles directly and is kept independent of it.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from .constraints import bellman_ford
from .free import DeLeeuwMeasure, LipschitzFunction, lip_norm, phi
from .metric import FiniteMetricSpace, Number

Pair = Tuple[int, int]

BRUTEFORCE_CAP = 8


@dataclass(frozen=True, eq=False)
class MonotonicityCertificate:
    monotone: bool
    witness: Optional[LipschitzFunction] = None
    violating_cycle: Optional[Tuple[Pair, ...]] = None

    def __post_init__(self):
        if self.monotone != (self.witness is not None) or self.monotone == (
            self.violating_cycle is not None
        ):
            raise ValueError("a certificate carries exactly one of witness / violating_cycle")

    def to_json(self) -> dict:
        out = {"monotone": self.monotone}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.violating_cycle is not None:
            out["cycle"] = [list(p) for p in self.violating_cycle]
        return out


def _pairs(space: FiniteMetricSpace, E: Iterable) -> List[Pair]:
    out = []
    for x, y in E:
        x, y = int(x), int(y)
        space.check_index(x, y)
        if x == y:
            raise ValueError(f"diagonal pair ({x}, {x}) in E")
        out.append((x, y))
    return sorted(set(out))


def cycle_gap(space: FiniteMetricSpace, cycle: Sequence[Pair]) -> Number:
    """LHS minus RHS of the cycle inequality; positive means violated."""
    d = space.dist
    k = len(cycle)
    lhs = sum((d[x][y] for x, y in cycle), space.zero())
    rhs = sum((d[cycle[i][0]][cycle[(i + 1) % k][1]] for i in range(k)), space.zero())
    return lhs - rhs


def violates(space: FiniteMetricSpace, cycle: Sequence[Pair]) -> bool:
    scale = sum((space.dist[x][y] for x, y in cycle), space.zero())
    return not space.leq(cycle_gap(space, cycle), space.zero(), scale)


def is_witness(space: FiniteMetricSpace, f: LipschitzFunction, E: Iterable[Pair]) -> bool:
    """f is 1-Lipschitz and has incremental quotient 1 on every pair of E."""
    if not space.leq(lip_norm(f), 1, 1):
        return False
    return all(space.eq(phi(f, x, y), 1, 1) for x, y in E)


def check_monotone_lp(space: FiniteMetricSpace, E: Iterable) -> MonotonicityCertificate:
    """Decide monotonicity by solving the difference constraints

        f(a) - f(b) <= d(a, b)          for all a != b
        f(y) - f(x) <= -d(x, y)         for (x, y) in E

    with Bellman-Ford; a negative cycle yields a violating cycle of pairs.
    """
    pairs = _pairs(space, E)
    n, d = space.n, space.dist
    edges = []
    for a in range(n):
        for b in range(n):
            if a != b:
                edges.append((b, a, d[a][b], None))
    for x, y in pairs:
        edges.append((x, y, -d[x][y], (x, y)))
    slack = 0 if space.exact else space.tol * (1 + space.diameter()) * 1e-3
    res = bellman_ford(n, edges, space.zero(), slack)
    if res.feasible:
        pot = res.potential
        shift = pot[space.base]
        f = LipschitzFunction(space, tuple(v - shift for v in pot))
        return MonotonicityCertificate(True, witness=f)
    used = [e[3] for e in res.cycle if e[3] is not None]
    # the digraph walks x1 -> y1 ~> x2 -> y2 ...; reversing the order puts
    # the violation in the form sum d(x_i, y_i) > sum d(x_i, y_{i+1})
    used.reverse()
    return MonotonicityCertificate(False, violating_cycle=tuple(used))


def check_monotone_bruteforce(
    space: FiniteMetricSpace, E: Iterable, cap: int = BRUTEFORCE_CAP
) -> MonotonicityCertificate:
    """Exhaustive check of the cycle inequality over all cyclic orderings.

    When no cycle is violated the witness is built by enumeration as well:
    g(z) = min(0, min over chains of distinct pairs p_1..p_k of
    -sum d(x_i, y_i) + sum d(x_{i+1}, y_i) + d(z, y_k)).
    """
    pairs = _pairs(space, E)
    if len(pairs) > cap:
        raise ValueError(f"brute force is capped at {cap} pairs, got {len(pairs)}")
    d = space.dist
    for k in range(2, len(pairs) + 1):
        for subset in combinations(range(len(pairs)), k):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                cycle = [pairs[first]] + [pairs[i] for i in perm]
                if violates(space, cycle):
                    return MonotonicityCertificate(False, violating_cycle=tuple(cycle))

    best_end = {}

    def extend(used: List[int], cost):
        y = pairs[used[-1]][1]
        if y not in best_end or cost < best_end[y]:
            best_end[y] = cost
        for i in range(len(pairs)):
            if i in used:
                continue
            x2, y2 = pairs[i]
            extend(used + [i], cost + d[x2][y] - d[x2][y2])

    for i, (x, y) in enumerate(pairs):
        extend([i], -d[x][y])
    g = []
    for z in range(space.n):
        v = space.zero()
        for y, c in best_end.items():
            cand = c + d[z][y]
            if cand < v:
                v = cand
        g.append(v)
    shift = g[space.base]
    return MonotonicityCertificate(
        True, witness=LipschitzFunction(space, tuple(v - shift for v in g))
    )


def verify_certificate(
    space: FiniteMetricSpace, E: Iterable, cert: MonotonicityCertificate
) -> bool:
    """Re-check a certificate against E without re-solving anything."""
    pairs = _pairs(space, E)
    if cert.monotone:
        return is_witness(space, cert.witness, pairs)
    cyc = list(cert.violating_cycle)
    if not cyc or len(set(cyc)) != len(cyc) or not set(cyc) <= set(pairs):
        return False
    return violates(space, cyc)


def is_optimal_representation(
    space: FiniteMetricSpace, mu: DeLeeuwMeasure
) -> Tuple[bool, MonotonicityCertificate]:
    cert = check_monotone_lp(space, mu.pairs())
    return cert.monotone, cert


def chain_alignment(space: FiniteMetricSpace, mu: DeLeeuwMeasure, chain: Sequence[Pair]) -> bool:
    """Interior points of a chain of support pairs lie in [x_0, x_n]."""
    chain = [(int(x), int(y)) for x, y in chain]
    if not chain:
        raise ValueError("empty chain")
    for (x, y) in chain:
        if (x, y) not in mu.weights:
            raise ValueError(f"pair ({x}, {y}) is not in the support")
    for (_, y), (x2, _) in zip(chain, chain[1:]):
        if y != x2:
            raise ValueError("consecutive pairs must share their linking point")
    seg = space.segment(chain[0][0], chain[-1][1])
    return all(y in seg for _, y in chain[:-1])


def chains(mu: DeLeeuwMeasure, max_len: int) -> List[Tuple[Pair, ...]]:
    """All chains (x_0,x_1),(x_1,x_2),... of support pairs with 2..max_len links."""
    by_start = {}
    for x, y in mu.weights:
        by_start.setdefault(x, []).append((x, y))
    out = []

    def grow(path):
        if len(path) >= 2:
            out.append(tuple(path))
        if len(path) == max_len:
            return
        for nxt in by_start.get(path[-1][1], []):
            if nxt not in path:
                grow(path + [nxt])

    for p in mu.weights:
        grow([p])
    return out
