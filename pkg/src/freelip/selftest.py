"""Randomized cross-validation of the solvers against each other.

Each case draws its instances from ``random.Random(f"{seed}:{name}:{case}")`` so a
report is reproducible from (seed, n_cases) alone.
"""
from __future__ import annotations

import random
import traceback
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import generators as gen
from .extension import coincidence_set, forced_pairs, forced_set
from .extremal import is_extreme_molecule
from .free import combination_to_element, jordan_split, lip_norm, mass, pair
from .monotonicity import (
    check_monotone_bruteforce,
    check_monotone_lp,
    is_witness,
    verify_certificate,
)
from .transport import decompose, free_norm, line_norm, solve


@dataclass
class InvariantResult:
    name: str
    passed: int = 0
    failures: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "failed": len(self.failures), "failures": self.failures[:10]}


def _line_norm_equivalence(rng, exact):
    sp = gen.line_space(rng, 30, exact)
    m = gen.element(rng, sp)
    a, _ = free_norm(m)
    b = line_norm(m)
    return sp.eq(a, b, abs(a) + abs(b)), f"free_norm {a} vs line_norm {b}"


def _duality_gap(rng, exact):
    sp = gen.planar_space(rng, 12, exact) if not exact else gen.graph_space(rng, 10, exact)
    m = gen.element(rng, sp)
    sol = solve(m)
    lp, lm = jordan_split(m)
    scale = abs(sol.cost) + sp.diameter()
    ok = (
        sp.leq(lip_norm(sol.potential), 1, 1)
        and sp.eq(pair(m, sol.potential), sol.cost, scale)
        and sp.eq(sol.coupling.cost(), sol.cost, scale)
        and sol.coupling.first_marginal().weights.keys() <= lp.weights.keys()
        and sol.coupling.second_marginal().weights.keys() <= lm.weights.keys()
    )
    return ok, f"cost {sol.cost}, pairing {pair(m, sol.potential)}"


def _decompose_contract(rng, exact):
    sp = gen.small_space(rng, 7, exact)
    m = gen.element(rng, sp)
    mu = decompose(m)
    norm, _ = free_norm(m)
    ok = (
        combination_to_element(mu).isclose(m)
        and sp.eq(mass(mu), norm, abs(norm) + 1)
        and not (mu.left_support() & mu.right_support())
        and check_monotone_lp(sp, mu.pairs()).monotone
    )
    return ok, f"mass {mass(mu)} vs norm {norm}"


def _lp_vs_bruteforce(rng, exact):
    sp = gen.small_space(rng, 6, exact)
    E = gen.pair_set(rng, sp, 5)
    a = check_monotone_lp(sp, E)
    b = check_monotone_bruteforce(sp, E)
    ok = a.monotone == b.monotone and verify_certificate(sp, E, a) and verify_certificate(sp, E, b)
    if a.monotone:
        ok = ok and is_witness(sp, a.witness, E)
    return ok, f"lp {a.monotone}, brute force {b.monotone}, E = {E}"


def _extension_identities(rng, exact):
    sp = gen.small_space(rng, 10, exact)
    prob = gen.extension_problem(rng, sp)
    S = forced_set(prob)
    ok = set(coincidence_set(prob)) == set(S)
    ok = ok and all(x in S and y in S for x, y in forced_pairs(prob))
    return ok, f"A = {list(prob.A)}"


def _concave_extreme(rng, exact):
    sp = gen.snowflake_space(rng, 7, exact)
    ok = all(
        is_extreme_molecule(sp, x, y) for x in range(sp.n) for y in range(sp.n) if x != y
    )
    return ok and sp.is_concave(), f"n = {sp.n}"


INVARIANTS: Dict[str, Callable] = {
    "line_norm_equivalence": _line_norm_equivalence,
    "duality_gap": _duality_gap,
    "decompose_contract": _decompose_contract,
    "lp_vs_bruteforce": _lp_vs_bruteforce,
    "extension_identities": _extension_identities,
    "concave_extreme": _concave_extreme,
}


def selftest(seed: int = 0, n_cases: int = 100, exact: bool = False, only=None) -> dict:
    """Run every invariant on ``n_cases`` random instances each."""
    names = list(only) if only else list(INVARIANTS)
    results = {name: InvariantResult(name) for name in names}
    for case in range(n_cases):
        for name in names:
            rng = random.Random(f"{seed}:{name}:{case}")
            try:
                ok, detail = INVARIANTS[name](rng, exact)
            except Exception as exc:  # a crash counts as a failure of that case
                ok, detail = False, "".join(traceback.format_exception_only(type(exc), exc)).strip()
            if ok:
                results[name].passed += 1
            else:
                results[name].failures.append({"case": case, "detail": detail})
    return {
        "seed": seed,
        "cases": n_cases,
        "exact": exact,
        "invariants": {k: v.to_json() for k, v in results.items()},
        "ok": all(not v.failures for v in results.values()),
    }
