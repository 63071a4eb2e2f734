import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freelip import generators as gen
from freelip.free import (
    Coupling,
    FreeElement,
    Measure,
    combination_to_element,
    jordan_split,
    lip_norm,
    mass,
    molecule,
    pair,
)
from freelip.metric import FiniteMetricSpace
from freelip.transport import (
    TransportError,
    coupling_to_deleeuw,
    decompose,
    free_norm,
    line_norm,
    optimal_coupling,
    solve,
    transportation_simplex,
    wasserstein1,
)
from oracles import free_norm_vertex, transport_vertex_min

F = Fraction


def test_worked_example_exact(line012):
    m = FreeElement.from_weights(line012, {1: 1, 2: -2})
    norm, f = free_norm(m)
    assert norm == 3
    assert pair(m, f) == 3 and lip_norm(f) == 1
    assert line_norm(m) == 3
    mu = decompose(m)
    assert mass(mu) == 3
    assert combination_to_element(mu) == m
    assert not (mu.left_support() & mu.right_support())


def test_worked_example_float(line012_float):
    m = FreeElement.from_weights(line012_float, {1: 1, 2: -2})
    norm, f = free_norm(m)
    assert abs(norm - 3) <= 1e-12
    assert abs(pair(m, f) - 3) <= 1e-12


def test_unique_coupling(line012):
    a = Measure.from_weights(line012, {2: 1})
    b = Measure.from_weights(line012, {0: 1})
    sol = optimal_coupling(a, b)
    assert sol.cost == 2
    assert dict(sol.coupling.weights) == {(2, 0): 1}


def test_line_example_coupling(line012):
    sol = optimal_coupling(
        Measure.from_weights(line012, {0: 1, 1: 1}), Measure.from_weights(line012, {2: 2})
    )
    assert sol.cost == 3


def test_coupling_to_deleeuw(line012):
    pi = Coupling.from_weights(line012, {(1, 2): 1, (0, 2): 1})
    assert dict(coupling_to_deleeuw(pi).weights) == {(0, 2): 2, (1, 2): 1}
    assert len(coupling_to_deleeuw(Coupling.from_weights(line012, {(1, 1): 4}))) == 0
    pi = Coupling.from_weights(line012, {(2, 0): 1})
    assert dict(coupling_to_deleeuw(pi).weights) == {(2, 0): 2}


def test_molecule_has_norm_one(line012):
    for x in range(3):
        for y in range(3):
            if x != y:
                m = molecule(line012, x, y)
                assert free_norm(m)[0] == 1
                assert dict(decompose(m).weights) == {(x, y): 1}


def test_zero_element(line012):
    z = FreeElement.zero(line012)
    assert free_norm(z)[0] == 0
    assert len(decompose(z)) == 0
    assert line_norm(z) == 0


def test_marginal_errors(line012):
    a = Measure.from_weights(line012, {0: 1, 1: 1})
    with pytest.raises(TransportError):
        optimal_coupling(a, Measure.from_weights(line012, {2: 1}))
    with pytest.raises(TransportError):
        optimal_coupling(Measure.from_weights(line012, {0: -1, 1: 2}), Measure.from_weights(line012, {2: 1}))
    empty = Measure.from_weights(line012, {})
    assert optimal_coupling(empty, empty).cost == 0


def test_wasserstein(line012):
    a = Measure.from_weights(line012, {0: F(1, 2), 2: F(1, 2)})
    b = Measure.from_weights(line012, {1: 1})
    assert wasserstein1(a, b) == 1
    assert wasserstein1(a, a) == 0


def test_simplex_degenerate_ties():
    # every cost equal: any feasible plan is optimal, duals must still be tight
    flows, u, v = transportation_simplex([1, 1, 1], [1, 1, 1], [[1] * 3] * 3, exact=True)
    assert sum(flows.values()) == 3
    for (i, j), x in flows.items():
        assert u[i] + v[j] == 1
    flows, u, v = transportation_simplex([2], [1, 1], [[3, 5]], exact=True)
    assert flows == {(0, 0): 1, (0, 1): 1}


def test_simplex_fractional_data():
    sup = [F(1, 3), F(2, 7)]
    dem = [F(1, 5), F(1, 3) + F(2, 7) - F(1, 5)]
    cost = [[F(1, 2), 3], [2, F(1, 9)]]
    flows, u, v = transportation_simplex(sup, dem, cost, exact=True)
    val = sum(cost[i][j] * x for (i, j), x in flows.items())
    assert val == transport_vertex_min(sup, dem, cost)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_matches_vertex_oracle(seed):
    rng = random.Random(seed)
    sp = gen.graph_space(rng, 5, True)
    m = gen.element(rng, sp, 0.8)
    norm, f = free_norm(m)
    assert norm == free_norm_vertex(m)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_matches_line_norm(seed, exact):
    rng = random.Random(seed)
    sp = gen.line_space(rng, 20, exact)
    m = gen.element(rng, sp)
    a, b = free_norm(m)[0], line_norm(m)
    if exact:
        assert a == b
    else:
        assert abs(a - b) <= 1e-9 * max(1, abs(b))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_float_close_to_exact(seed):
    rng = random.Random(seed)
    sp = gen.graph_space(rng, 9, True)
    m = gen.element(rng, sp)
    spf = FiniteMetricSpace.from_matrix(sp.dist, base=sp.base)
    mf = FreeElement.from_weights(spf, {i: float(a) for i, a in m.weights.items()})
    exact_norm = free_norm(m)[0]
    assert abs(free_norm(mf)[0] - float(exact_norm)) <= 1e-9 * (1 + float(exact_norm))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_solution_contract(seed):
    rng = random.Random(seed)
    sp = gen.planar_space(rng, 15)
    m = gen.element(rng, sp)
    sol = solve(m)
    lp, lm = jordan_split(m)
    scale = 1 + sp.diameter()
    assert abs(pair(m, sol.potential) - sol.cost) <= 1e-9 * scale
    assert abs(sol.coupling.cost() - sol.cost) <= 1e-9 * scale
    assert lip_norm(sol.potential) <= 1 + 1e-9
    for i in set(lp.weights) | set(sol.coupling.first_marginal().weights):
        assert abs(sol.coupling.first_marginal().weights.get(i, 0) - lp.weights.get(i, 0)) <= 1e-12 * scale


def test_line_norm_requires_line(line012):
    sp = FiniteMetricSpace.from_matrix(line012.dist)
    with pytest.raises(ValueError):
        line_norm(FreeElement.delta(sp, 1))


def test_large_exact_instance_runs():
    rng = random.Random(7)
    sp = gen.line_space(rng, 200, True)
    m = gen.element(rng, sp)
    assert free_norm(m)[0] == line_norm(m)
