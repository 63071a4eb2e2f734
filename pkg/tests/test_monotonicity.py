import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freelip import generators as gen
from freelip.constraints import bellman_ford, floyd_warshall
from freelip.free import DeLeeuwMeasure, FreeElement, LipschitzFunction, combination_to_element, mass
from freelip.metric import FiniteMetricSpace
from freelip.monotonicity import (
    MonotonicityCertificate,
    chain_alignment,
    chains,
    check_monotone_bruteforce,
    check_monotone_lp,
    cycle_gap,
    is_optimal_representation,
    is_witness,
    verify_certificate,
    violates,
)
from freelip.transport import decompose, free_norm
from oracles import cycle_inequality_holds


def test_identity_witness(line012):
    E = [(1, 0), (2, 1)]
    cert = check_monotone_lp(line012, E)
    assert cert.monotone
    assert cert.witness.values == (0, 1, 2)
    assert verify_certificate(line012, E, cert)


def test_two_cycle(line012):
    E = [(0, 1), (1, 0)]
    for check in (check_monotone_lp, check_monotone_bruteforce):
        cert = check(line012, E)
        assert not cert.monotone
        assert len(cert.violating_cycle) == 2
        assert violates(line012, cert.violating_cycle)
    # positive gap = violated by that much
    assert cycle_gap(line012, [(0, 1), (1, 0)]) == 2


def test_worked_example_is_optimal(line012):
    mu = DeLeeuwMeasure.from_weights(line012, {(0, 1): 1, (1, 2): 2})
    ok, cert = is_optimal_representation(line012, mu)
    assert ok and is_witness(line012, cert.witness, mu.pairs())
    bad = DeLeeuwMeasure.from_weights(line012, {(0, 1): 1, (1, 0): 1})
    assert not is_optimal_representation(line012, bad)[0]


def test_certificate_shape(line012):
    with pytest.raises(ValueError):
        MonotonicityCertificate(True)
    with pytest.raises(ValueError):
        MonotonicityCertificate(False, witness=LipschitzFunction.distance_to_base(line012))
    cert = check_monotone_lp(line012, [(0, 1), (1, 0)])
    assert set(cert.to_json()) == {"monotone", "cycle"}


def test_forged_certificates_rejected(line012):
    E = [(0, 1), (1, 0)]
    assert not verify_certificate(line012, E, MonotonicityCertificate(True, witness=LipschitzFunction.from_values(line012, [0, 1, 2])))
    assert not verify_certificate(line012, [(1, 0), (2, 1)], MonotonicityCertificate(False, violating_cycle=((1, 0), (2, 1))))


def test_diagonal_pairs_rejected(line012):
    with pytest.raises(ValueError):
        check_monotone_lp(line012, [(1, 1)])


def test_bruteforce_cap():
    big = FiniteMetricSpace.from_line_points(list(range(5)))
    E = [(x, y) for x in range(5) for y in range(5) if x > y][:9]
    with pytest.raises(ValueError):
        check_monotone_bruteforce(big, E)


def test_chain_alignment(line012):
    mu = DeLeeuwMeasure.from_weights(line012, {(2, 1): 1, (1, 0): 1})
    assert chain_alignment(line012, mu, [(2, 1), (1, 0)])
    assert chains(mu, 4) == [((2, 1), (1, 0))]
    with pytest.raises(ValueError):
        chain_alignment(line012, mu, [(1, 0), (2, 1)])
    with pytest.raises(ValueError):
        chain_alignment(line012, mu, [(0, 2)])


def test_bellman_ford_negative_cycle():
    res = bellman_ford(3, [(0, 1, 1, "a"), (1, 2, -3, "b"), (2, 0, 1, "c")], 0, 0)
    assert not res.feasible
    assert sorted(e[3] for e in res.cycle) == ["a", "b", "c"]
    ok = bellman_ford(2, [(0, 1, 2, None), (1, 0, -1, None)], 0, 0)
    assert ok.feasible and ok.potential[1] - ok.potential[0] <= 2


def test_floyd_warshall():
    inf = float("inf")
    D = floyd_warshall(3, [[0, 1, inf], [inf, 0, 1], [5, inf, 0]])
    assert D[0][2] == 2 and D[2][1] == 6


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_lp_agrees_with_bruteforce(seed, exact):
    rng = random.Random(seed)
    sp = gen.small_space(rng, 6, exact)
    E = gen.pair_set(rng, sp, 5)
    a = check_monotone_lp(sp, E)
    b = check_monotone_bruteforce(sp, E)
    assert a.monotone == b.monotone == cycle_inequality_holds(sp, E)
    assert verify_certificate(sp, E, a) and verify_certificate(sp, E, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_decompositions_are_monotone_and_aligned(seed):
    rng = random.Random(seed)
    sp = gen.graph_space(rng, 7, True, p=0.3)
    mu = decompose(gen.element(rng, sp))
    assert is_optimal_representation(sp, mu)[0]
    for ch in chains(mu, 4):
        assert chain_alignment(sp, mu, ch)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_monotone_measure_is_optimal(seed):
    rng = random.Random(seed)
    sp = gen.small_space(rng, 6, True)
    E = gen.pair_set(rng, sp, 4)
    cert = check_monotone_lp(sp, E)
    mu = DeLeeuwMeasure.from_weights(sp, {p: Fraction(rng.randint(1, 5), rng.randint(1, 3)) for p in E})
    norm = free_norm(combination_to_element(mu))[0]
    assert (norm == mass(mu)) == cert.monotone
