"""1-Lipschitz extensions of a function given on a subset A.

The smallest and largest extensions are the sup- and inf-convolutions
``E^-(x) = max_p f(p) - d(p, x)`` and ``E^+(x) = min_p f(p) + d(p, x)``.
Extension values need not vanish at the base point, so the functions in
this module are returned as plain tuples of values.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Set, Tuple

from .constraints import floyd_warshall
from .metric import FiniteMetricSpace, Number, SegmentSet

Pair = Tuple[int, int]


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExtensionProblem:
    space: FiniteMetricSpace
    A: tuple
    f: Mapping[int, Number]

    def __post_init__(self):
        if not self.A:
            raise ExtensionError("A must be nonempty")
        self.space.check_index(*self.A)
        if set(self.A) != set(self.f):
            raise ExtensionError("f must be given exactly on A")
        d, sp = self.space.dist, self.space
        for p in self.A:
            for q in self.A:
                if not sp.leq(self.f[p] - self.f[q], d[p][q], d[p][q]):
                    raise ExtensionError(f"f is not 1-Lipschitz on A: points {p}, {q}")

    @classmethod
    def build(cls, space: FiniteMetricSpace, values: Mapping) -> "ExtensionProblem":
        f = {int(k): space.num(v) for k, v in values.items()}
        A = tuple(sorted(f))
        return cls(space, A, f)

    @classmethod
    def from_json(cls, space: FiniteMetricSpace, data: Mapping) -> "ExtensionProblem":
        A = [int(a) for a in data["A"]]
        raw = data["f"]
        if isinstance(raw, Mapping):
            vals = {int(k): v for k, v in raw.items()}
        else:
            vals = dict(enumerate(raw))
        ignored = sorted(set(vals) - set(A))
        if ignored:
            warnings.warn(f"values outside A are ignored: points {ignored}")
        missing = [a for a in A if a not in vals]
        if missing:
            raise ExtensionError(f"no value given for points {missing} of A")
        return cls.build(space, {a: vals[a] for a in A})

    def to_json(self) -> dict:
        from .io import encode_number

        return {"A": list(self.A), "f": {str(p): encode_number(self.f[p]) for p in self.A}}


def mcshane_lower(prob: ExtensionProblem, x: int) -> Number:
    d = prob.space.dist
    return max(prob.f[p] - d[p][x] for p in prob.A)


def mcshane_upper(prob: ExtensionProblem, x: int) -> Number:
    d = prob.space.dist
    return min(prob.f[p] + d[p][x] for p in prob.A)


def lower_extension(prob: ExtensionProblem) -> tuple:
    return tuple(mcshane_lower(prob, x) for x in range(prob.space.n))


def upper_extension(prob: ExtensionProblem) -> tuple:
    return tuple(mcshane_upper(prob, x) for x in range(prob.space.n))


def interpolate_extension(prob: ExtensionProblem, t) -> tuple:
    """t * E^+ + (1 - t) * E^-, a 1-Lipschitz extension for t in [0, 1]."""
    t = prob.space.num(t)
    if not 0 <= t <= 1:
        raise ExtensionError("t must lie in [0, 1]")
    lo, hi = lower_extension(prob), upper_extension(prob)
    return tuple(t * b + (1 - t) * a for a, b in zip(lo, hi))


def tight_pairs(prob: ExtensionProblem) -> list:
    """Pairs (p, q) of distinct points of A with f(p) - f(q) = d(p, q)."""
    sp, d = prob.space, prob.space.dist
    return [
        (p, q)
        for p in prob.A
        for q in prob.A
        if p != q and sp.eq(prob.f[p] - prob.f[q], d[p][q], d[p][q])
    ]


def forced_set(prob: ExtensionProblem) -> SegmentSet:
    """Union of A and of the segments [p, q] over tight pairs of A."""
    members: Set[int] = set(prob.A)
    for p, q in tight_pairs(prob):
        members |= prob.space.segment(p, q).members
    return SegmentSet(frozenset(members))


def coincidence_set(prob: ExtensionProblem) -> SegmentSet:
    """Points where the two McShane extensions agree."""
    sp = prob.space
    lo, hi = lower_extension(prob), upper_extension(prob)
    scale = 1 + sp.diameter()
    return SegmentSet(frozenset(x for x in range(sp.n) if sp.eq(lo[x], hi[x], scale)))


def max_differences(prob: ExtensionProblem) -> list:
    """``D[x][y] = max F(y) - F(x)`` over 1-Lipschitz extensions F.

    Shortest paths in the constraint digraph with edges ``b -> a`` of
    length d(a, b) and, inside A, of length f(a) - f(b).
    """
    sp, d = prob.space, prob.space.dist
    n = sp.n
    w = [[d[a][b] for a in range(n)] for b in range(n)]
    for a in prob.A:
        for b in prob.A:
            c = prob.f[a] - prob.f[b]
            if c < w[b][a]:
                w[b][a] = c
    return floyd_warshall(n, w)


def forced_pairs(prob: ExtensionProblem) -> Set[Pair]:
    """Pairs (x, y), x != y, on which every extension has quotient 1."""
    sp, d = prob.space, prob.space.dist
    D = max_differences(prob)
    out = set()
    for x in range(sp.n):
        for y in range(sp.n):
            # min F(x) - F(y) = -max(F(y) - F(x))
            if x != y and sp.eq(-D[x][y], d[x][y], d[x][y]):
                out.add((x, y))
    return out


def extension_range(prob: ExtensionProblem, x: int, y: int) -> Tuple[Number, Number]:
    """(min, max) of F(x) - F(y) over all 1-Lipschitz extensions F."""
    D = max_differences(prob)
    return -D[x][y], D[y][x]
