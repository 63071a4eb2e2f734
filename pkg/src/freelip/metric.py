"""Finite pointed metric spaces.

Points are identified by index; labels are only carried for display and
serialization. Distances are either all ``float`` or all ``Fraction``
(``exact=True``); every comparison that tests an equality between sums of
distances goes through :meth:`FiniteMetricSpace.eq` so that the tolerance
policy lives in one place.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

Number = Union[float, Fraction]

DEFAULT_TOL = 1e-9


class MetricError(ValueError):
    """Raised when a space cannot be built from the given data."""


def as_number(x, exact: bool) -> Number:
    """Coerce ``x`` (int, float, Fraction or a string like ``"1/3"``)."""
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, bool):
            raise TypeError("booleans are not numbers here")
        # Fraction(float) is the exact binary value of the float
        return Fraction(x)
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


def zero(exact: bool) -> Number:
    return Fraction(0) if exact else 0.0


@dataclass(frozen=True)
class SegmentSet:
    """A set of point indices, e.g. a metric segment or a forced set."""

    members: frozenset

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __or__(self, other: "SegmentSet") -> "SegmentSet":
        return SegmentSet(self.members | other.members)

    def __le__(self, other: "SegmentSet") -> bool:
        return self.members <= other.members

    def sorted(self) -> list:
        return sorted(self.members)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: Optional[str] = None
    points: tuple = ()
    detail: str = ""

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out.update(axiom=self.axiom, points=list(self.points), detail=self.detail)
        return out


@dataclass(frozen=True)
class FiniteMetricSpace:
    labels: tuple
    dist: tuple
    base: int = 0
    exact: bool = False
    coords: Optional[tuple] = None
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        n = len(self.dist)
        if n < 1:
            raise MetricError("a metric space needs at least one point")
        if any(len(row) != n for row in self.dist):
            raise MetricError("distance matrix must be square")
        if len(self.labels) != n:
            raise MetricError(f"expected {n} labels, got {len(self.labels)}")
        if not 0 <= self.base < n:
            raise MetricError(f"base index {self.base} out of range")
        if self.coords is not None and len(self.coords) != n:
            raise MetricError("coords length does not match the number of points")

    # construction -----------------------------------------------------

    @classmethod
    def from_matrix(
        cls,
        dist: Sequence[Sequence],
        labels: Optional[Sequence] = None,
        base: int = 0,
        exact: bool = False,
        tol: float = DEFAULT_TOL,
    ) -> "FiniteMetricSpace":
        rows = tuple(tuple(as_number(v, exact) for v in row) for row in dist)
        if labels is None:
            labels = [str(i) for i in range(len(rows))]
        return cls(tuple(str(l) for l in labels), rows, base, exact, None, tol)

    @classmethod
    def from_line_points(
        cls,
        coords: Sequence,
        base: int = 0,
        exact: bool = False,
        tol: float = DEFAULT_TOL,
    ) -> "FiniteMetricSpace":
        """Subset of the real line with the distance ``|s - t|``."""
        ts = tuple(as_number(c, exact) for c in coords)
        for a, b in zip(ts, ts[1:]):
            if a == b:
                raise MetricError(f"duplicate line point {a}")
            if a > b:
                raise MetricError("line points must be strictly increasing")
        dist = tuple(tuple(abs(s - t) for t in ts) for s in ts)
        labels = tuple(_fmt(t) for t in ts)
        return cls(labels, dist, base, exact, ts, tol)

    @classmethod
    def from_points(
        cls,
        points: Sequence[Sequence[float]],
        base: int = 0,
        exact: bool = False,
        tol: float = DEFAULT_TOL,
    ) -> "FiniteMetricSpace":
        """Euclidean distances between points of R^k.

        In exact mode the distances are the exact values of their float
        roundings, so near-collinear configurations may not validate.
        """
        n = len(points)
        dist = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dist[i][j] = dist[j][i] = math.dist(points[i], points[j])
        return cls.from_matrix(dist, base=base, exact=exact, tol=tol)

    # basic access -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.dist)

    def __len__(self) -> int:
        return len(self.dist)

    def d(self, i: int, j: int) -> Number:
        return self.dist[i][j]

    @property
    def is_line(self) -> bool:
        return self.coords is not None

    def diameter(self) -> Number:
        return max(max(row) for row in self.dist)

    def zero(self) -> Number:
        return zero(self.exact)

    def num(self, x) -> Number:
        return as_number(x, self.exact)

    def check_index(self, *idx: int) -> None:
        for i in idx:
            if not (isinstance(i, int) and 0 <= i < self.n):
                raise IndexError(f"point index {i!r} out of range for {self.n} points")

    def with_tol(self, tol: float) -> "FiniteMetricSpace":
        return FiniteMetricSpace(self.labels, self.dist, self.base, self.exact, self.coords, tol)

    def with_base(self, base: int) -> "FiniteMetricSpace":
        return FiniteMetricSpace(self.labels, self.dist, base, self.exact, self.coords, self.tol)

    # tolerance policy -------------------------------------------------

    def eq(self, a: Number, b: Number, scale: Number = 0) -> bool:
        """``a == b`` exactly, or within ``tol * (1 + |scale|)`` in float mode."""
        if self.exact:
            return a == b
        return abs(a - b) <= self.tol * (1 + abs(scale))

    def leq(self, a: Number, b: Number, scale: Number = 0) -> bool:
        if self.exact:
            return a <= b
        return a <= b + self.tol * (1 + abs(scale))

    def lt(self, a: Number, b: Number, scale: Number = 0) -> bool:
        return not self.leq(b, a, scale)

    # metric geometry --------------------------------------------------

    def segment(self, p: int, q: int) -> SegmentSet:
        """Points x with d(p,x) + d(x,q) = d(p,q)."""
        self.check_index(p, q)
        dpq = self.dist[p][q]
        members = {
            x for x in range(self.n) if self.eq(self.dist[p][x] + self.dist[x][q], dpq, dpq)
        }
        members.update((p, q))
        return SegmentSet(frozenset(members))

    def segment_eps(self, p: int, q: int, eps) -> SegmentSet:
        """Points x with d(p,x) + d(x,q) < d(p,q) + eps."""
        self.check_index(p, q)
        eps = self.num(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        dpq = self.dist[p][q]
        bound = dpq + eps
        members = {x for x in range(self.n) if self.dist[p][x] + self.dist[x][q] < bound}
        return SegmentSet(frozenset(members)) | self.segment(p, q)

    def is_metric_triple(self, p: int, x: int, q: int) -> bool:
        return x in self.segment(p, q)

    def is_concave(self) -> bool:
        """True when every segment [p,q] with p != q is just {p, q}."""
        for p in range(self.n):
            for q in range(p + 1, self.n):
                if len(self.segment(p, q)) > 2:
                    return False
        return True

    def snowflake(self, theta) -> "FiniteMetricSpace":
        theta_f = float(Fraction(theta)) if isinstance(theta, str) else float(theta)
        if not 0 < theta_f < 1:
            raise ValueError(f"snowflake exponent must lie in (0, 1), got {theta}")
        dist = tuple(tuple(_power(v, theta_f, self.exact) for v in row) for row in self.dist)
        return FiniteMetricSpace(self.labels, dist, self.base, self.exact, None, self.tol)

    def validate(self) -> ValidationReport:
        return validate(self)

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        from .io import encode_number

        if self.coords is not None:
            return {"line": [encode_number(t) for t in self.coords], "base": self.base}
        return {
            "labels": list(self.labels),
            "dist": [[encode_number(v) for v in row] for row in self.dist],
            "base": self.base,
        }

    @classmethod
    def from_json(cls, data: dict, exact: bool = False, tol: float = DEFAULT_TOL):
        base = int(data.get("base", 0))
        if "line" in data:
            return cls.from_line_points(data["line"], base=base, exact=exact, tol=tol)
        if "dist" not in data:
            raise MetricError("space JSON needs either 'dist' or 'line'")
        return cls.from_matrix(data["dist"], data.get("labels"), base=base, exact=exact, tol=tol)


def _power(v: Number, theta: float, exact: bool) -> Number:
    if v == 0 or v == 1:
        return v
    r = float(v) ** theta
    return Fraction(r) if exact else r


def _fmt(t: Number) -> str:
    if isinstance(t, Fraction):
        return str(t)
    return repr(t)


def validate(space: FiniteMetricSpace) -> ValidationReport:
    """Return the first violated metric axiom, or an ok report."""
    n, d = space.n, space.dist
    for i in range(n):
        if d[i][i] != 0:
            return ValidationReport(False, "zero-diagonal", (i,), f"d({i},{i}) = {d[i][i]}")
    for i in range(n):
        for j in range(i + 1, n):
            if not space.eq(d[i][j], d[j][i], d[i][j]):
                return ValidationReport(False, "symmetry", (i, j), f"{d[i][j]} != {d[j][i]}")
    for i in range(n):
        for j in range(n):
            if i != j and not d[i][j] > 0:
                return ValidationReport(False, "positivity", (i, j), f"d({i},{j}) = {d[i][j]}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not space.leq(d[i][k], d[i][j] + d[j][k], d[i][k]):
                    return ValidationReport(
                        False,
                        "triangle",
                        (i, j, k),
                        f"d({i},{k}) = {d[i][k]} > d({i},{j}) + d({j},{k}) = {d[i][j] + d[j][k]}",
                    )
    return ValidationReport(True)


def segment(space: FiniteMetricSpace, p: int, q: int) -> SegmentSet:
    return space.segment(p, q)


def segment_eps(space: FiniteMetricSpace, p: int, q: int, eps) -> SegmentSet:
    return space.segment_eps(p, q, eps)


def is_metric_triple(space: FiniteMetricSpace, p: int, x: int, q: int) -> bool:
    return space.is_metric_triple(p, x, q)


def snowflake(space: FiniteMetricSpace, theta) -> FiniteMetricSpace:
    return space.snowflake(theta)


def is_concave(space: FiniteMetricSpace) -> bool:
    return space.is_concave()


def from_line_points(coords: Iterable, base: int = 0, exact: bool = False) -> FiniteMetricSpace:
    return FiniteMetricSpace.from_line_points(list(coords), base=base, exact=exact)


def nontrivial_triples(space: FiniteMetricSpace):
    """All (p, x, q) with x strictly between distinct p and q (oracle helper)."""
    out = []
    for p, x, q in permutations(range(space.n), 3):
        d = space.dist
        if space.eq(d[p][x] + d[x][q], d[p][q], d[p][q]):
            out.append((p, x, q))
    return out
