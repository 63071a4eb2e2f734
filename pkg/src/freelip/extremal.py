"""Extreme molecules and support bounds for faces of the unit ball."""
from __future__ import annotations

from .free import DeLeeuwMeasure, FreeElement, LipschitzFunction, _div, lip_norm, pair
from .metric import FiniteMetricSpace, SegmentSet
from .transport import free_norm


def is_extreme_molecule(space: FiniteMetricSpace, x: int, y: int) -> bool:
    """m_xy is an extreme point of the ball iff [x, y] = {x, y}."""
    space.check_index(x, y)
    if x == y:
        raise ValueError("molecules need two distinct points")
    return len(space.segment(x, y)) == 2


def splitting_witness(space: FiniteMetricSpace, x: int, y: int):
    """For a non-extreme m_xy, an interior point z and the convex combination

        m_xy = d(x,z)/d(x,y) m_xz + d(z,y)/d(x,y) m_zy

    as a de Leeuw measure of mass 1. Returns None when m_xy is extreme.
    """
    inner = sorted(space.segment(x, y).members - {x, y})
    if not inner:
        return None
    z = inner[0]
    d, ex = space.dist, space.exact
    mu = DeLeeuwMeasure.from_weights(
        space, {(x, z): _div(d[x][z], d[x][y], ex), (z, y): _div(d[z][y], d[x][y], ex)}
    )
    return z, mu


def face_support_bound(space: FiniteMetricSpace, m: FreeElement) -> SegmentSet:
    pts = sorted(m.support() | {space.base})
    members = set(pts)
    for i, p in enumerate(pts):
        for q in pts[i + 1 :]:
            members |= space.segment(p, q).members
    return SegmentSet(frozenset(members))


def check_face_alignment(
    space: FiniteMetricSpace, m: FreeElement, m2: FreeElement, f: LipschitzFunction
) -> bool:
    """supp(m2) lies in the segment hull of supp(m) + base when f norms both.

    Raises ValueError if f is not a common norming function of two elements
    of equal norm.
    """
    if not space.leq(lip_norm(f), 1, 1):
        raise ValueError("f is not 1-Lipschitz")
    n1, _ = free_norm(m)
    n2, _ = free_norm(m2)
    scale = max(abs(n1), abs(n2))
    if not space.eq(n1, n2, scale):
        raise ValueError(f"elements have different norms {n1} and {n2}")
    if not (space.eq(pair(m, f), n1, scale) and space.eq(pair(m2, f), n2, scale)):
        raise ValueError("f does not norm both elements")
    return m2.support() <= face_support_bound(space, m).members
