"""Systems of difference constraints ``f(a) - f(b) <= w``.

Each constraint is an edge ``b -> a`` of weight ``w``. A system is feasible
iff the constraint digraph has no negative cycle, and then the shortest
distances from a virtual source joined to every node by zero-weight edges
form a solution.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Edge = Tuple[int, int, object, object]  # (tail, head, weight, tag)


@dataclass
class Feasibility:
    feasible: bool
    potential: Optional[list] = None
    cycle: Optional[List[Edge]] = None  # edges of a negative cycle, in order


def bellman_ford(n: int, edges: Sequence[Edge], zero, slack=0) -> Feasibility:
    """Shortest distances from a virtual source, or a negative cycle.

    ``slack`` is the minimum improvement a relaxation must achieve; it is 0
    in exact arithmetic and a small float tolerance otherwise, so that
    zero-weight cycles perturbed by rounding are not reported.
    """
    dist = [zero] * n
    pred: List[Optional[Edge]] = [None] * n
    last = -1
    for _ in range(n + 1):
        last = -1
        for e in edges:
            b, a, w, _tag = e
            cand = dist[b] + w
            if cand < dist[a] - slack:
                dist[a] = cand
                pred[a] = e
                last = a
        if last < 0:
            return Feasibility(True, potential=dist)
    # walk back n steps to land on the cycle
    node = last
    for _ in range(n):
        if pred[node] is None:
            raise RuntimeError("predecessor walk left the graph; inconsistent relaxation")
        node = pred[node][0]
    cycle = []
    cur = node
    while True:
        e = pred[cur]
        cycle.append(e)
        cur = e[0]
        if cur == node:
            break
    cycle.reverse()
    return Feasibility(False, cycle=cycle)


def floyd_warshall(n: int, weights) -> list:
    """All-pairs shortest path lengths for a dense weight matrix.

    ``weights[b][a]`` is the length of the edge ``b -> a`` (``None`` when
    absent). Assumes no negative cycles.
    """
    dist = [list(row) for row in weights]
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                cand = dik + dkj
                if di[j] is None or cand < di[j]:
                    di[j] = cand
    return dist
