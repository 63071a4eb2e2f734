import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freelip.free import combination_to_element, mass, molecule
from freelip.line_lab import (
    StepDensity,
    cantor_demo,
    density_of,
    l1_affine_minus_step,
    lebesgue_series,
    snowflake_demo,
    step_decompose,
    step_element,
    svc_build,
    svc_element,
)
from freelip.transport import free_norm, line_norm

F = Fraction


def test_molecule_density():
    # phi_xy = 1/(x - y) on (y, x) maps to the molecule m_xy
    f = StepDensity.build([F(1, 4), F(3, 4)], [2])
    space, mu = step_decompose(f)
    i, j = space.coords.index(F(3, 4)), space.coords.index(F(1, 4))
    assert dict(mu.weights) == {(i, j): 1}
    _, m = step_element(f, space)
    assert m == molecule(space, i, j)


def test_zero_density():
    f = StepDensity.build([0, 1], [0])
    _, mu = step_decompose(f)
    assert len(mu) == 0


def test_two_pieces():
    f = StepDensity.build([0, 1, 2], [1, -1])
    space, mu = step_decompose(f)
    assert dict(mu.weights) == {(1, 0): 1, (1, 2): 1}
    assert mass(mu) == 2
    _, m = step_element(f, space)
    assert free_norm(m)[0] == 2 == f.l1_norm()
    assert combination_to_element(mu) == m


def test_density_of_round_trip():
    f = StepDensity.build([0, F(1, 2), 1, 3], [F(1, 3), F(1, 3), -2])
    space, mu = step_decompose(f)
    g = density_of(mu)
    assert [g.value_at(x) for x in (F(1, 4), F(3, 4), 2)] == [F(1, 3), F(1, 3), -2]


def test_l1_affine():
    f = StepDensity.build([0, 1], [0])
    assert l1_affine_minus_step(-1, 1, f) == F(1, 2)
    # crossing inside the interval
    assert l1_affine_minus_step(1, 0, StepDensity.build([0, 1], [F(1, 2)])) == F(1, 4)


def test_bad_step_density():
    with pytest.raises(ValueError):
        StepDensity.build([0, 1], [1, 2])
    with pytest.raises(ValueError):
        StepDensity.build([1, 0], [1])


@pytest.mark.parametrize("N", range(6))
def test_lebesgue_series(N):
    s = lebesgue_series(N)
    assert s.partial_mass == F(1, 2) * (1 - F(1, 2 ** (N + 1)))
    assert s.residual_norm == F(1, 2 ** (N + 2))
    assert len(s.partial) == 2 ** (N + 1) - 1


def test_lebesgue_first_term():
    s = lebesgue_series(0)
    t = s.space.coords
    assert {(t[x], t[y]): w for (x, y), w in s.partial.weights.items()} == {(F(1, 2), 0): F(1, 4)}


def test_lebesgue_depth_bounds():
    with pytest.raises(ValueError):
        lebesgue_series(-1)


def test_svc_small():
    a0 = svc_build(0)
    assert a0.removed == () and a0.alpha == 1
    a1 = svc_build(1)
    assert a1.removed == ((F(3, 8), F(5, 8)),)
    assert a1.alpha == F(3, 4)
    space, m, H = svc_element(a1)
    idx = {p: i for i, p in enumerate(space.coords)}
    assert dict(m.weights) == {idx[F(3, 8)]: 1, idx[F(5, 8)]: -1, idx[F(1)]: 1}
    assert free_norm(m)[0] == F(3, 4) == line_norm(m)
    space, m, H = svc_element(a0)
    assert free_norm(m)[0] == 1


def test_svc_alpha_decreases():
    alphas = [svc_build(n).alpha for n in range(8)]
    assert all(a > b for a, b in zip(alphas, alphas[1:]))
    assert all(a == F(1, 2) + F(1, 2 ** (n + 1)) for n, a in enumerate(alphas))


@pytest.mark.parametrize("depth", range(5))
def test_cantor_demo(depth):
    r = cantor_demo(depth)
    assert r.norm == r.pairing == r.alpha == r.line_norm
    assert r.flat_on_gaps and r.H_lip <= 1


@pytest.mark.parametrize("theta", [0.25, 0.5, 0.75])
def test_snowflake_demo(theta):
    r = snowflake_demo(12, theta)
    assert r.min_margin > 0
    assert r.base_pairs_tight and r.omega_norms and r.pairs_end_at_base


def test_snowflake_demo_rejects_tiny_grid():
    with pytest.raises(ValueError):
        snowflake_demo(1, 0.5)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=8), st.integers(0, 10**6))
def test_step_decompose_is_optimal(vals, seed):
    rng = random.Random(seed)
    pts = sorted(rng.sample(range(1, 40), len(vals) + 1))
    f = StepDensity.build([F(p, 4) for p in pts], vals)
    space, mu = step_decompose(f)
    _, m = step_element(f, space)
    assert combination_to_element(mu) == m
    assert mass(mu) == f.l1_norm() == free_norm(m)[0] == line_norm(m)
