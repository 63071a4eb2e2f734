"""Constructions on the real line.

Step densities f on the line correspond to elements Tf of the free space of
their breakpoint grid through <g, Tf> = sum_i v_i (g(t_{i+1}) - g(t_i)); a
pair (x, y) with y < x and weight w stands for w times the normalized
indicator of (y, x). Everything here is built at a finite depth; nothing
claims the limiting objects.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .free import DeLeeuwMeasure, FreeElement, LipschitzFunction, pair, phi
from .metric import FiniteMetricSpace, Number, as_number
from .transport import decompose, free_norm, line_norm

MAX_LEBESGUE_DEPTH = 20
MAX_SVC_DEPTH = 12


@dataclass(frozen=True)
class StepDensity:
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values) + 1 and not (
            len(self.breakpoints) <= 1 and not self.values
        ):
            raise ValueError("need one value per interval between breakpoints")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def build(cls, breakpoints: Sequence, values: Sequence, exact: bool = True) -> "StepDensity":
        return cls(
            tuple(as_number(t, exact) for t in breakpoints),
            tuple(as_number(v, exact) for v in values),
        )

    def l1_norm(self) -> Number:
        t = self.breakpoints
        return sum((abs(v) * (t[i + 1] - t[i]) for i, v in enumerate(self.values)), 0 * _z(t))

    def positive_part(self) -> "StepDensity":
        return StepDensity(self.breakpoints, tuple(max(v, 0 * v) for v in self.values))

    def negative_part(self) -> "StepDensity":
        return StepDensity(self.breakpoints, tuple(max(-v, 0 * v) for v in self.values))

    def value_at(self, x) -> Number:
        t = self.breakpoints
        for i, v in enumerate(self.values):
            if t[i] < x < t[i + 1]:
                return v
        return 0 * _z(t)


def _z(t):
    return t[0] if t else 0


def _grid_space(points, exact: bool) -> FiniteMetricSpace:
    pts = sorted(set(points) | {as_number(0, exact)})
    return FiniteMetricSpace.from_line_points(pts, base=pts.index(0), exact=exact)


def step_element(f: StepDensity, space: Optional[FiniteMetricSpace] = None):
    """Tf as a finitely supported element: coefficient v_{k-1} - v_k at t_k."""
    exact = isinstance(_z(f.breakpoints), Fraction)
    if space is None:
        space = _grid_space(f.breakpoints, exact)
    index = {t: i for i, t in enumerate(space.coords)}
    t, v = f.breakpoints, f.values
    w: Dict[int, Number] = {}
    for k, tk in enumerate(t):
        prev = v[k - 1] if k >= 1 else 0
        nxt = v[k] if k < len(v) else 0
        if prev - nxt != 0:
            w[index[tk]] = w.get(index[tk], 0) + (prev - nxt)
    return space, FreeElement.from_weights(space, w)


def step_decompose(f: StepDensity) -> Tuple[FiniteMetricSpace, DeLeeuwMeasure]:
    """One weighted pair per maximal constant piece of f+ and of f-.

    A piece (a, b) of value v > 0 becomes weight v*(b-a) on the pair (b, a);
    a negative piece becomes weight |v|*(b-a) on (a, b).
    """
    exact = isinstance(_z(f.breakpoints), Fraction)
    space = _grid_space(f.breakpoints, exact)
    index = {t: i for i, t in enumerate(space.coords)}
    t, v = f.breakpoints, f.values
    pieces: List[Tuple[Number, Number, Number]] = []
    for i, val in enumerate(v):
        if val == 0:
            continue
        if pieces and pieces[-1][1] == t[i] and pieces[-1][2] == val:
            a, _, _ = pieces[-1]
            pieces[-1] = (a, t[i + 1], val)
        else:
            pieces.append((t[i], t[i + 1], val))
    weights: Dict[Tuple[int, int], Number] = {}
    for a, b, val in pieces:
        ia, ib = index[a], index[b]
        key = (ib, ia) if val > 0 else (ia, ib)
        weights[key] = weights.get(key, 0) + abs(val) * (b - a)
    return space, DeLeeuwMeasure.from_weights(space, weights)


def density_of(mu: DeLeeuwMeasure) -> StepDensity:
    """Step density on the grid of a line space represented by ``mu``."""
    space = mu.space
    if not space.is_line:
        raise ValueError("density_of needs a line space")
    t = space.coords
    vals = [space.zero()] * (space.n - 1)
    for (x, y), w in mu.weights.items():
        lo, hi = min(x, y), max(x, y)
        h = w / (t[hi] - t[lo]) if not space.exact else Fraction(w) / (t[hi] - t[lo])
        sign = 1 if x > y else -1
        for k in range(lo, hi):
            vals[k] += sign * h
    return StepDensity(tuple(t), tuple(vals))


def l1_affine_minus_step(slope, intercept, f: StepDensity) -> Number:
    """Exact integral of |slope*t + intercept - f(t)| over the span of f."""
    t = f.breakpoints
    total = 0 * _z(t)
    for k, v in enumerate(f.values):
        a, b = t[k], t[k + 1]
        ga = slope * a + intercept - v
        gb = slope * b + intercept - v
        if (ga >= 0 and gb >= 0) or (ga <= 0 and gb <= 0):
            total += abs(ga + gb) * (b - a) / 2
        else:
            r = a + (b - a) * ga / (ga - gb)
            total += (abs(ga) * (r - a) + abs(gb) * (b - r)) / 2
    return total


# Lebesgue measure on [0, 1] as a dyadic series --------------------------


@dataclass(frozen=True, eq=False)
class LebesgueSeries:
    depth: int
    space: FiniteMetricSpace
    partial: DeLeeuwMeasure
    partial_mass: Number
    residual_norm: Number

    def to_json(self) -> dict:
        from .io import encode_number

        t = self.space.coords
        return {
            "depth": self.depth,
            "partial_mass": encode_number(self.partial_mass),
            "residual_norm": encode_number(self.residual_norm),
            "total": encode_number(self.partial_mass + self.residual_norm),
            "terms": [
                {"x": encode_number(t[x]), "y": encode_number(t[y]), "w": encode_number(w)}
                for (x, y), w in self.partial.weights.items()
            ],
        }


def lebesgue_series(depth: int, exact: bool = True) -> LebesgueSeries:
    """Truncation at level ``depth`` of the dyadic series for f(x) = 1 - x.

    Level n contributes weight 4^-(n+1) on each pair
    ((2k+1)/2^(n+1), 2k/2^(n+1)), k < 2^n. The residual norm is the exact L1
    distance between f and the step density of the partial sum.
    """
    if not 0 <= depth <= MAX_LEBESGUE_DEPTH:
        raise ValueError(f"depth must be in [0, {MAX_LEBESGUE_DEPTH}]")
    N = 2 ** (depth + 1)
    grid = [Fraction(k, N) for k in range(N + 1)]
    space = FiniteMetricSpace.from_line_points(grid, base=0, exact=exact)
    step = N  # grid index of 1
    items = []
    for n in range(depth + 1):
        stride = step // 2 ** (n + 1)
        coef = Fraction(1, 4 ** (n + 1))
        for k in range(2 ** n):
            items.append(((2 * k + 1) * stride, 2 * k * stride, coef))
    partial = DeLeeuwMeasure.from_pairs(space, items)
    dens = density_of(partial)
    residual = l1_affine_minus_step(-1, 1, dens)
    return LebesgueSeries(depth, space, partial, partial.mass(), residual)


# Smith-Volterra-Cantor set at finite depth ------------------------------


@dataclass(frozen=True)
class CantorApprox:
    depth: int
    removed: tuple  # (a_k, b_k), sorted
    kept: tuple  # surviving closed intervals, sorted
    alpha: Fraction

    def staircase(self, x) -> Fraction:
        """Measure of [0, x] intersected with the depth-n set."""
        x = Fraction(x)
        total = Fraction(0)
        for a, b in self.kept:
            if x <= a:
                break
            total += min(x, b) - a
        return total

    def density(self) -> StepDensity:
        pts = sorted({0, 1} | {p for ab in self.removed for p in ab})
        pts = [Fraction(p) for p in pts]
        removed = set(self.removed)
        vals = tuple(Fraction(0) if (a, b) in removed else Fraction(1) for a, b in zip(pts, pts[1:]))
        return StepDensity(tuple(pts), vals)

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "depth": self.depth,
            "alpha": encode_number(self.alpha),
            "removed": [[encode_number(a), encode_number(b)] for a, b in self.removed],
        }


def svc_build(depth: int) -> CantorApprox:
    """Remove a centered open interval of length 4^-k from each of the
    2^(k-1) intervals surviving stage k-1, for k = 1..depth."""
    if not 0 <= depth <= MAX_SVC_DEPTH:
        raise ValueError(f"depth must be in [0, {MAX_SVC_DEPTH}]")
    kept = [(Fraction(0), Fraction(1))]
    removed = []
    for k in range(1, depth + 1):
        gap = Fraction(1, 4 ** k)
        nxt = []
        for a, b in kept:
            mid = (a + b) / 2
            lo, hi = mid - gap / 2, mid + gap / 2
            removed.append((lo, hi))
            nxt.extend([(a, lo), (hi, b)])
        kept = nxt
    removed.sort()
    alpha = 1 - sum((b - a for a, b in removed), Fraction(0))
    return CantorApprox(depth, tuple(removed), tuple(kept), alpha)


def svc_element(approx: CantorApprox, exact: bool = True):
    """(space, m, H) with m = delta(1) - sum_k (delta(b_k) - delta(a_k)) and
    H the depth-n staircase, on the points {0, 1, a_k, b_k}."""
    pts = sorted({Fraction(0), Fraction(1)} | {p for ab in approx.removed for p in ab})
    space = FiniteMetricSpace.from_line_points(pts, base=0, exact=exact)
    index = {p: i for i, p in enumerate(pts)}
    w = {index[Fraction(1)]: 1}
    for a, b in approx.removed:
        w[index[a]] = w.get(index[a], 0) + 1
        w[index[b]] = w.get(index[b], 0) - 1
    m = FreeElement.from_weights(space, w)
    H = LipschitzFunction.from_values(space, [approx.staircase(p) for p in pts])
    return space, m, H


@dataclass(frozen=True, eq=False)
class CantorReport:
    depth: int
    alpha: Number
    norm: Number
    line_norm: Number
    pairing: Number
    H_lip: Number
    flat_on_gaps: bool

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "depth": self.depth,
            "alpha": encode_number(self.alpha),
            "norm": encode_number(self.norm),
            "line_norm": encode_number(self.line_norm),
            "pairing": encode_number(self.pairing),
            "H_lip": encode_number(self.H_lip),
            "flat_on_gaps": self.flat_on_gaps,
        }


def cantor_demo(depth: int, exact: bool = True) -> CantorReport:
    approx = svc_build(depth)
    space, m, H = svc_element(approx, exact=exact)
    index = {p: i for i, p in enumerate(space.coords)}
    norm, _ = free_norm(m)
    flat = all(H(index[a]) == H(index[b]) for a, b in approx.removed)
    return CantorReport(
        depth, approx.alpha, norm, line_norm(m), pair(m, H), H.lip_norm(), flat
    )


# snowflaked grid ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SnowflakeReport:
    grid: int
    theta: float
    min_margin: Number
    argmin: tuple
    base_pairs_tight: bool
    omega_norms: bool
    uniform_norm: Number
    pairs_end_at_base: bool
    n_pairs: int

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "grid": self.grid,
            "theta": self.theta,
            "min_margin": encode_number(self.min_margin),
            "argmin": list(self.argmin),
            "base_pairs_tight": self.base_pairs_tight,
            "omega_norms": self.omega_norms,
            "uniform_norm": encode_number(self.uniform_norm),
            "pairs_end_at_base": self.pairs_end_at_base,
            "n_pairs": self.n_pairs,
        }


def snowflake_grid(n: int, theta, exact: bool = False) -> FiniteMetricSpace:
    line = FiniteMetricSpace.from_line_points([Fraction(k, n) for k in range(n + 1)], base=0, exact=exact)
    return line.snowflake(theta)


def snowflake_demo(n: int, theta, exact: bool = False, seed: int = 0, extra: int = 5) -> SnowflakeReport:
    """Finite checks on {0, 1/n, ..., 1} with the distance |x - y|^theta.

    omega = d(., 0) norms positive elements, its quotient is strictly below
    1 on pairs p > q > 0, and the optimal decomposition of the discretized
    uniform measure only uses pairs ending at the base point.
    """
    import random

    if n < 2:
        raise ValueError("grid size must be at least 2")
    space = snowflake_grid(n, theta, exact)
    omega = LipschitzFunction.distance_to_base(space)
    best, arg = None, None
    for p in range(1, n + 1):
        for q in range(1, p):
            margin = 1 - phi(omega, p, q)
            if best is None or margin < best:
                best, arg = margin, (p, q)
    tight = all(space.eq(phi(omega, x, 0), 1, 1) for x in range(1, n + 1))
    uniform = FreeElement.from_weights(space, {k: Fraction(1, n) for k in range(1, n + 1)})
    norm, _ = free_norm(uniform)
    rng = random.Random(seed)
    elems = [uniform] + [
        FreeElement.from_weights(space, {k: Fraction(rng.randint(0, 9), 7) for k in range(1, n + 1)})
        for _ in range(extra)
    ]
    norms_ok = True
    for e in elems:
        v, _ = free_norm(e)
        norms_ok &= space.eq(pair(e, omega), v, v)
    mu = decompose(uniform)
    ends = all(y == space.base for _, y in mu.weights)
    return SnowflakeReport(
        n, float(Fraction(theta)) if isinstance(theta, str) else float(theta),
        best, arg, tight, norms_ok, norm, ends, len(mu),
    )
