"""Elements of the free space, Lipschitz functions and de Leeuw measures.

A :class:`FreeElement` is a finite combination of evaluation functionals
``sum a_i delta(x_i)``; the base point carries no coefficient because
``delta(base) = 0``. A :class:`DeLeeuwMeasure` is a positive weighting of
ordered pairs ``(x, y)`` with ``x != y``; it represents the element
``sum mu(x, y) * m_xy`` where ``m_xy = (delta(x) - delta(y)) / d(x, y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .metric import FiniteMetricSpace, Number

Pair = Tuple[int, int]


class SpaceMismatch(ValueError):
    pass


def _same_space(a: FiniteMetricSpace, b: FiniteMetricSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("objects live on different metric spaces")


def _div(a: Number, b: Number, exact: bool) -> Number:
    if exact:
        return Fraction(a) / b
    return a / b


@dataclass(frozen=True, eq=False)
class FreeElement:
    space: FiniteMetricSpace
    weights: Mapping[int, Number] = field(default_factory=dict)

    @classmethod
    def from_weights(cls, space: FiniteMetricSpace, weights: Mapping) -> "FreeElement":
        clean: Dict[int, Number] = {}
        for i, w in weights.items():
            i = int(i)
            space.check_index(i)
            if i == space.base:
                continue
            w = space.num(w)
            clean[i] = clean.get(i, space.zero()) + w
        return cls(space, {i: clean[i] for i in sorted(clean) if clean[i] != 0})

    @classmethod
    def delta(cls, space: FiniteMetricSpace, x: int) -> "FreeElement":
        return cls.from_weights(space, {x: 1})

    @classmethod
    def zero(cls, space: FiniteMetricSpace) -> "FreeElement":
        return cls(space, {})

    def support(self) -> frozenset:
        return frozenset(self.weights)

    def is_zero(self) -> bool:
        return not self.weights

    def __add__(self, other: "FreeElement") -> "FreeElement":
        _same_space(self.space, other.space)
        w = dict(self.weights)
        for i, a in other.weights.items():
            w[i] = w.get(i, self.space.zero()) + a
        return FreeElement.from_weights(self.space, w)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.space, {i: -a for i, a in self.weights.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        c = self.space.num(c)
        return FreeElement.from_weights(self.space, {i: c * a for i, a in self.weights.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.space == other.space and dict(self.weights) == dict(other.weights)

    def isclose(self, other: "FreeElement", tol: Optional[float] = None) -> bool:
        _same_space(self.space, other.space)
        if self.space.exact and tol is None:
            return self == other
        tol = self.space.tol if tol is None else tol
        keys = set(self.weights) | set(other.weights)
        scale = 1 + max([abs(v) for v in self.weights.values()] + [0])
        return all(
            abs(self.weights.get(k, 0) - other.weights.get(k, 0)) <= tol * scale for k in keys
        )

    def to_json(self) -> dict:
        from .io import encode_number

        return {"weights": {str(i): encode_number(a) for i, a in self.weights.items()}}

    @classmethod
    def from_json(cls, space: FiniteMetricSpace, data: Mapping) -> "FreeElement":
        return cls.from_weights(space, data.get("weights", {}))


@dataclass(frozen=True, eq=False)
class Measure:
    """Finitely supported measure on the points, base point included.

    Used for the positive and negative parts of an element and for the
    marginals of couplings.
    """

    space: FiniteMetricSpace
    weights: Mapping[int, Number] = field(default_factory=dict)

    @classmethod
    def from_weights(cls, space: FiniteMetricSpace, weights: Mapping) -> "Measure":
        clean: Dict[int, Number] = {}
        for i, w in weights.items():
            i = int(i)
            space.check_index(i)
            clean[i] = clean.get(i, space.zero()) + space.num(w)
        return cls(space, {i: clean[i] for i in sorted(clean) if clean[i] != 0})

    def total(self) -> Number:
        return sum(self.weights.values(), self.space.zero())

    def is_positive(self) -> bool:
        return all(w >= 0 for w in self.weights.values())

    def support(self) -> frozenset:
        return frozenset(self.weights)

    def to_element(self) -> FreeElement:
        return FreeElement.from_weights(self.space, self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.space == other.space and dict(self.weights) == dict(other.weights)

    def to_json(self) -> dict:
        from .io import encode_number

        return {"weights": {str(i): encode_number(a) for i, a in self.weights.items()}}

    @classmethod
    def from_json(cls, space: FiniteMetricSpace, data: Mapping) -> "Measure":
        return cls.from_weights(space, data.get("weights", {}))


@dataclass(frozen=True, eq=False)
class LipschitzFunction:
    space: FiniteMetricSpace
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.space.n:
            raise ValueError(f"expected {self.space.n} values, got {len(self.values)}")
        if self.values[self.space.base] != 0:
            raise ValueError("a Lipschitz function must vanish at the base point")

    @classmethod
    def from_values(
        cls, space: FiniteMetricSpace, values: Iterable, normalize: bool = False
    ) -> "LipschitzFunction":
        vals = [space.num(v) for v in values]
        if normalize:
            c = vals[space.base]
            vals = [v - c for v in vals]
        return cls(space, tuple(vals))

    @classmethod
    def distance_to_base(cls, space: FiniteMetricSpace) -> "LipschitzFunction":
        return cls(space, tuple(space.d(i, space.base) for i in range(space.n)))

    def __call__(self, i: int) -> Number:
        return self.values[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LipschitzFunction):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def lip_norm(self) -> Number:
        return lip_norm(self)

    def to_json(self) -> dict:
        from .io import encode_number

        return {"values": [encode_number(v) for v in self.values]}

    @classmethod
    def from_json(cls, space: FiniteMetricSpace, data: Mapping, normalize: bool = True):
        return cls.from_values(space, data["values"], normalize=normalize)


@dataclass(frozen=True, eq=False)
class DeLeeuwMeasure:
    space: FiniteMetricSpace
    weights: Mapping[Pair, Number] = field(default_factory=dict)

    @classmethod
    def from_weights(cls, space: FiniteMetricSpace, weights: Mapping) -> "DeLeeuwMeasure":
        clean: Dict[Pair, Number] = {}
        for (x, y), w in weights.items():
            x, y = int(x), int(y)
            space.check_index(x, y)
            if x == y:
                raise ValueError(f"de Leeuw measures live off the diagonal, got ({x}, {y})")
            w = space.num(w)
            if w < 0:
                raise ValueError(f"negative weight {w} at ({x}, {y})")
            clean[(x, y)] = clean.get((x, y), space.zero()) + w
        return cls(space, {p: clean[p] for p in sorted(clean) if clean[p] != 0})

    @classmethod
    def from_pairs(cls, space: FiniteMetricSpace, items: Iterable) -> "DeLeeuwMeasure":
        """Build from ``(x, y, w)`` triples; repeated pairs are merged."""
        acc: Dict[Pair, Number] = {}
        for x, y, w in items:
            acc[(x, y)] = acc.get((x, y), space.zero()) + space.num(w)
        return cls.from_weights(space, acc)

    def pairs(self) -> list:
        return list(self.weights)

    def mass(self) -> Number:
        return mass(self)

    def left_support(self) -> frozenset:
        return frozenset(x for x, _ in self.weights)

    def right_support(self) -> frozenset:
        return frozenset(y for _, y in self.weights)

    def restrict(self, pairs: Iterable[Pair]) -> "DeLeeuwMeasure":
        keep = set(pairs)
        return DeLeeuwMeasure(self.space, {p: w for p, w in self.weights.items() if p in keep})

    def scale(self, c) -> "DeLeeuwMeasure":
        c = self.space.num(c)
        return DeLeeuwMeasure.from_weights(self.space, {p: c * w for p, w in self.weights.items()})

    def to_element(self) -> FreeElement:
        return combination_to_element(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeLeeuwMeasure):
            return NotImplemented
        return self.space == other.space and dict(self.weights) == dict(other.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "pairs": [{"x": x, "y": y, "w": encode_number(w)} for (x, y), w in self.weights.items()]
        }

    @classmethod
    def from_json(cls, space: FiniteMetricSpace, data: Mapping) -> "DeLeeuwMeasure":
        return cls.from_pairs(space, ((int(p["x"]), int(p["y"]), p["w"]) for p in data["pairs"]))


@dataclass(frozen=True, eq=False)
class Coupling:
    space: FiniteMetricSpace
    weights: Mapping[Pair, Number] = field(default_factory=dict)

    @classmethod
    def from_weights(cls, space: FiniteMetricSpace, weights: Mapping) -> "Coupling":
        clean: Dict[Pair, Number] = {}
        for (x, y), w in weights.items():
            x, y = int(x), int(y)
            space.check_index(x, y)
            w = space.num(w)
            if w < 0:
                raise ValueError(f"negative coupling weight {w} at ({x}, {y})")
            clean[(x, y)] = clean.get((x, y), space.zero()) + w
        return cls(space, {p: clean[p] for p in sorted(clean) if clean[p] != 0})

    def cost(self) -> Number:
        d = self.space.dist
        return sum((w * d[x][y] for (x, y), w in self.weights.items()), self.space.zero())

    def first_marginal(self) -> Measure:
        acc: Dict[int, Number] = {}
        for (x, _), w in self.weights.items():
            acc[x] = acc.get(x, self.space.zero()) + w
        return Measure.from_weights(self.space, acc)

    def second_marginal(self) -> Measure:
        acc: Dict[int, Number] = {}
        for (_, y), w in self.weights.items():
            acc[y] = acc.get(y, self.space.zero()) + w
        return Measure.from_weights(self.space, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coupling):
            return NotImplemented
        return self.space == other.space and dict(self.weights) == dict(other.weights)

    def to_json(self) -> dict:
        from .io import encode_number

        return {
            "pairs": [{"x": x, "y": y, "w": encode_number(w)} for (x, y), w in self.weights.items()]
        }


# operations ------------------------------------------------------------


def pair(m: FreeElement, f: LipschitzFunction) -> Number:
    """The duality pairing <m, f> = sum_i m_i f(x_i)."""
    _same_space(m.space, f.space)
    return sum((a * f.values[i] for i, a in m.weights.items()), m.space.zero())


def lip_norm(f: LipschitzFunction) -> Number:
    space = f.space
    best = space.zero()
    v = f.values
    for i in range(space.n):
        for j in range(i + 1, space.n):
            q = _div(abs(v[i] - v[j]), space.dist[i][j], space.exact)
            if q > best:
                best = q
    return best


def phi(f: LipschitzFunction, x: int, y: int) -> Number:
    """Incremental quotient (f(x) - f(y)) / d(x, y)."""
    if x == y:
        raise ValueError("incremental quotient is undefined on the diagonal")
    space = f.space
    return _div(f.values[x] - f.values[y], space.dist[x][y], space.exact)


def molecule(space: FiniteMetricSpace, x: int, y: int) -> FreeElement:
    space.check_index(x, y)
    if x == y:
        raise ValueError("molecules need two distinct points")
    c = _div(1, space.dist[x][y], space.exact)
    return FreeElement.from_weights(space, {x: c, y: -c})


def combination_to_element(mu: DeLeeuwMeasure) -> FreeElement:
    space = mu.space
    acc: Dict[int, Number] = {}
    for (x, y), w in mu.weights.items():
        c = _div(w, space.dist[x][y], space.exact)
        acc[x] = acc.get(x, space.zero()) + c
        acc[y] = acc.get(y, space.zero()) - c
    return FreeElement.from_weights(space, acc)


def mass(mu: DeLeeuwMeasure) -> Number:
    return sum(mu.weights.values(), mu.space.zero())


def jordan_split(m: FreeElement) -> Tuple[Measure, Measure]:
    """Positive and negative parts, balanced by mass at the base point."""
    space = m.space
    pos = {i: a for i, a in m.weights.items() if a > 0}
    neg = {i: -a for i, a in m.weights.items() if a < 0}
    tp = sum(pos.values(), space.zero())
    tn = sum(neg.values(), space.zero())
    if tp < tn:
        pos[space.base] = tn - tp
    elif tn < tp:
        neg[space.base] = tp - tn
    return Measure.from_weights(space, pos), Measure.from_weights(space, neg)


def split_overlap(mu: DeLeeuwMeasure, x: int, y: int, z: int) -> DeLeeuwMeasure:
    """Remove the overlap at ``y`` between the pairs (x, y) and (y, z).

    Uses m_xz = d(x,y)/d(x,z) m_xy + d(y,z)/d(x,z) m_yz. Whichever of the two
    pairs carries less transported mass (weight divided by length) is
    rewritten away entirely; the result represents the same element with
    the same total mass.
    """
    space = mu.space
    a = mu.weights.get((x, y), space.zero())
    b = mu.weights.get((y, z), space.zero())
    if x == z:
        raise ValueError("pairs (x, y) and (y, x) cannot be merged; x == z")
    if a == 0 or b == 0:
        return mu
    if y not in space.segment(x, z):
        raise ValueError(f"point {y} is not in the segment [{x}, {z}]; no splitting exists")
    d = space.dist
    dxy, dyz, dxz = d[x][y], d[y][z], d[x][z]
    ex = space.exact
    w = dict(mu.weights)
    del w[(x, y)], w[(y, z)]
    flow_a = _div(a, dxy, ex)
    flow_b = _div(b, dyz, ex)
    if flow_a <= flow_b:
        # a m_xy + b m_yz = a' m_xz + b' m_yz
        new_xz = flow_a * dxz
        rest = (a + b) - new_xz
        keep = (y, z)
    else:
        # a m_xy + b m_yz = a' m_xy + b' m_xz
        new_xz = flow_b * dxz
        rest = (a + b) - new_xz
        keep = (x, y)
    w[(x, z)] = w.get((x, z), space.zero()) + new_xz
    if ex or rest > space.tol * (1 + a + b):
        w[keep] = rest
    return DeLeeuwMeasure.from_weights(space, w)


def overlaps(mu: DeLeeuwMeasure) -> list:
    """Triples (x, y, z) with both (x, y) and (y, z) in the support, x != z."""
    out = []
    for x, y in mu.weights:
        for y2, z in mu.weights:
            if y2 == y and z != x:
                out.append((x, y, z))
    return out


def refine_pair(mu: DeLeeuwMeasure, x: int, z: int, y: int) -> DeLeeuwMeasure:
    """Inverse of :func:`split_overlap`: route the mass on (x, z) through y.

    Needs y in [x, z]; the weight w on (x, z) becomes w d(x,y)/d(x,z) on
    (x, y) and w d(y,z)/d(x,z) on (y, z).
    """
    space = mu.space
    w = mu.weights.get((x, z))
    if w is None:
        raise ValueError(f"pair ({x}, {z}) is not in the support")
    if y in (x, z) or y not in space.segment(x, z):
        raise ValueError(f"point {y} is not strictly inside [{x}, {z}]")
    d, ex = space.dist, space.exact
    out = dict(mu.weights)
    del out[(x, z)]
    for key, part in (((x, y), d[x][y]), ((y, z), d[y][z])):
        out[key] = out.get(key, space.zero()) + _div(w * part, d[x][z], ex)
    return DeLeeuwMeasure.from_weights(space, out)
