import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freelip import generators as gen
from freelip.extension import (
    ExtensionError,
    ExtensionProblem,
    coincidence_set,
    extension_range,
    forced_pairs,
    forced_set,
    interpolate_extension,
    lower_extension,
    mcshane_lower,
    mcshane_upper,
    tight_pairs,
    upper_extension,
)
from freelip.free import LipschitzFunction, lip_norm
from freelip.metric import FiniteMetricSpace
from oracles import forced_pair_closed_form


@pytest.fixture
def line4():
    return FiniteMetricSpace.from_line_points([0, 1, 2, 3], exact=True)


def test_values_on_A(line4):
    prob = ExtensionProblem.build(line4, {0: 0, 3: 1})
    for a in prob.A:
        assert mcshane_lower(prob, a) == mcshane_upper(prob, a) == prob.f[a]


def test_single_point(line4):
    prob = ExtensionProblem.build(line4, {0: 0})
    for x in range(4):
        assert mcshane_lower(prob, x) == -x
        assert mcshane_upper(prob, x) == x
    assert forced_set(prob).sorted() == [0]
    assert forced_pairs(prob) == set()
    assert interpolate_extension(prob, Fraction(1, 2)) == (0, 0, 0, 0)


def test_tight_endpoints_force_everything(line4):
    prob = ExtensionProblem.build(line4, {0: 0, 3: 3})
    assert forced_set(prob).sorted() == [0, 1, 2, 3]
    assert forced_pairs(prob) == {(x, y) for x in range(4) for y in range(4) if x > y}
    assert tight_pairs(prob) == [(3, 0)]


def test_full_A_gives_tight_pairs_of_f(line4):
    vals = {0: 0, 1: 1, 2: 1, 3: 2}
    prob = ExtensionProblem.build(line4, vals)
    f = lambda x: vals[x]
    expected = {(x, y) for x in range(4) for y in range(4) if x != y and f(x) - f(y) == abs(x - y)}
    assert forced_pairs(prob) == expected


def test_no_tight_pairs(line4):
    prob = ExtensionProblem.build(line4, {0: 0, 3: 1})
    assert forced_set(prob).sorted() == [0, 3]


def test_range(line4):
    prob = ExtensionProblem.build(line4, {0: 0, 3: 1})
    lo, hi = extension_range(prob, 1, 2)
    assert lo == -1 and hi == 1
    lo, hi = extension_range(prob, 3, 0)
    assert lo == hi == 1


def test_validation(line4):
    with pytest.raises(ExtensionError):
        ExtensionProblem.build(line4, {0: 0, 1: 2})
    with pytest.raises(ExtensionError):
        ExtensionProblem.build(line4, {})
    with pytest.raises(ExtensionError):
        interpolate_extension(ExtensionProblem.build(line4, {0: 0}), 2)


def test_from_json(line4):
    with pytest.warns(UserWarning):
        prob = ExtensionProblem.from_json(line4, {"A": [0, 2], "f": [0, 5, 1, 7]})
    assert prob.f == {0: 0, 2: 1}
    with pytest.raises(ExtensionError):
        ExtensionProblem.from_json(line4, {"A": [0, 3], "f": {"0": 0}})
    again = ExtensionProblem.from_json(line4, prob.to_json())
    assert again.f == prob.f and again.A == prob.A


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_extension_identities(seed, exact):
    rng = random.Random(seed)
    sp = gen.graph_space(rng, 10, True) if exact else gen.planar_space(rng, 12)
    prob = gen.extension_problem(rng, sp)
    lo, hi = lower_extension(prob), upper_extension(prob)
    for vals in (lo, hi, interpolate_extension(prob, Fraction(1, 3))):
        g = LipschitzFunction.from_values(sp, vals, normalize=True)
        assert sp.leq(lip_norm(g), 1, 1)
    S = forced_set(prob)
    assert set(coincidence_set(prob)) == set(S)
    P = forced_pairs(prob)
    assert all(x in S and y in S for x, y in P)
    for x in range(sp.n):
        for y in range(sp.n):
            if x != y:
                v = forced_pair_closed_form(prob, x, y)
                assert ((x, y) in P) == sp.eq(v, sp.dist[x][y], sp.dist[x][y])
                assert sp.eq(extension_range(prob, x, y)[0], v, 1 + sp.diameter())
