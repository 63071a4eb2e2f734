"""Self-verifying certificates emitted by the CLI.

Every certificate carries a JSON payload and a list of checks. The checks
are recomputed from the payload alone (no solver calls), so
:func:`verify` can re-run them on a certificate read back from disk and
confirm that it reproduces the same pass/fail list.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import io
from .extension import (
    ExtensionProblem,
    coincidence_set,
    forced_pairs,
    forced_set,
)
from .free import (
    Coupling,
    DeLeeuwMeasure,
    FreeElement,
    LipschitzFunction,
    Measure,
    combination_to_element,
    jordan_split,
    lip_norm,
    mass,
    molecule,
    pair,
    phi,
)
from .metric import FiniteMetricSpace
from .monotonicity import MonotonicityCertificate, verify_certificate

KINDS = ("norm", "decomposition", "monotonicity", "extension", "extremality", "demo")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass(frozen=True, eq=False)
class Certificate:
    kind: str
    payload: dict
    checks: Tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "payload": self.payload,
            "checks": [c.to_json() for c in self.checks],
            "ok": self.ok,
        }


def build(kind: str, payload: dict) -> Certificate:
    """Normalize the payload through JSON and run the checks of ``kind``."""
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    text = io.dumps(payload)
    checks = run_checks(kind, text)
    return Certificate(kind, json.loads(text), tuple(checks))


def run_checks(kind: str, payload_text: str) -> List[Check]:
    exact = bool(json.loads(payload_text).get("exact", False))
    data = io.loads(payload_text, exact=exact)
    return _CHECKS[kind](data, exact)


def verify(cert_json: dict) -> Tuple[bool, List[Check]]:
    """Recompute the checks of a serialized certificate.

    Returns whether the recomputed list matches the stored one, along with
    the recomputed checks.
    """
    kind = cert_json["kind"]
    checks = run_checks(kind, json.dumps(cert_json["payload"]))
    stored = [(c["name"], c["pass"]) for c in cert_json["checks"]]
    return stored == [(c.name, c.passed) for c in checks], checks


# helpers -----------------------------------------------------------------


def _space(data, exact) -> FiniteMetricSpace:
    sp = FiniteMetricSpace.from_json(data["space"], exact=exact)
    if "tol" in data:
        sp = sp.with_tol(float(data["tol"]))
    return sp


def _num(space, x):
    return space.num(x)


def _measures_close(space: FiniteMetricSpace, a: Measure, b: Measure) -> bool:
    keys = set(a.weights) | set(b.weights)
    z = space.zero()
    scale = max([abs(v) for v in a.weights.values()] + [abs(v) for v in b.weights.values()] + [1])
    return all(space.eq(a.weights.get(k, z), b.weights.get(k, z), scale) for k in keys)


def _coupling(space, data) -> Coupling:
    return Coupling.from_weights(space, {(int(p["x"]), int(p["y"])): p["w"] for p in data["pairs"]})


def _c(name, ok, detail="") -> Check:
    return Check(name, bool(ok), detail)


# per-kind checks -------------------------------------------------------------


def _check_norm(data, exact) -> List[Check]:
    space = _space(data, exact)
    f = LipschitzFunction.from_json(space, data["norming"], normalize=False)
    pi = _coupling(space, data["coupling"])
    value = _num(space, data["norm"])
    scale = abs(value) + space.diameter()
    if "element" in data:
        m = FreeElement.from_json(space, data["element"])
        lp, lm = jordan_split(m)
        dual = pair(m, f)
    else:
        lp = Measure.from_json(space, data["alpha"])
        lm = Measure.from_json(space, data["beta"])
        dual = pair(lp.to_element(), f) - pair(lm.to_element(), f)
        # f vanishes at the base, so base mass does not enter the pairing
    lip = lip_norm(f)
    return [
        _c("norming_is_1_lipschitz", space.leq(lip, 1, 1), f"lip = {lip}"),
        _c("first_marginal", _measures_close(space, pi.first_marginal(), lp)),
        _c("second_marginal", _measures_close(space, pi.second_marginal(), lm)),
        _c("coupling_cost", space.eq(pi.cost(), value, scale), f"cost = {pi.cost()}"),
        _c("zero_duality_gap", space.eq(dual, value, scale), f"pairing = {dual}"),
    ]


def _check_decomposition(data, exact) -> List[Check]:
    space = _space(data, exact)
    m = FreeElement.from_json(space, data["element"])
    mu = DeLeeuwMeasure.from_json(space, data["measure"])
    f = LipschitzFunction.from_json(space, data["norming"], normalize=False)
    value = _num(space, data["norm"])
    scale = abs(value) + space.diameter()
    rep = combination_to_element(mu)
    lip = lip_norm(f)
    quotients_ok = all(space.eq(phi(f, x, y), 1, 1) for x, y in mu.pairs())
    return [
        _c("represents_element", rep.isclose(m)),
        _c("mass_equals_norm", space.eq(mass(mu), value, scale), f"mass = {mass(mu)}"),
        _c("norming_is_1_lipschitz", space.leq(lip, 1, 1), f"lip = {lip}"),
        _c("quotient_one_on_support", quotients_ok),
        _c("pairing_equals_norm", space.eq(pair(m, f), value, scale)),
        _c("disjoint_coordinates", not (mu.left_support() & mu.right_support())),
    ]


def _check_monotonicity(data, exact) -> List[Check]:
    space = _space(data, exact)
    pairs = [(int(x), int(y)) for x, y in data["pairs"]]
    c = data["certificate"]
    if c["monotone"]:
        w = LipschitzFunction.from_json(space, c["witness"], normalize=False)
        cert = MonotonicityCertificate(True, witness=w)
    else:
        cyc = tuple((int(x), int(y)) for x, y in c["cycle"])
        cert = MonotonicityCertificate(False, violating_cycle=cyc)
    checks = [_c("certificate_valid", verify_certificate(space, pairs, cert))]
    if "measure" in data:
        mu = DeLeeuwMeasure.from_json(space, data["measure"])
        checks.append(_c("support_matches_pairs", sorted(mu.pairs()) == sorted(set(pairs))))
        if cert.monotone:
            val = pair(combination_to_element(mu), cert.witness)
            checks.append(
                _c("witness_attains_mass", space.eq(val, mass(mu), mass(mu)), f"pairing = {val}")
            )
    return checks


def _check_extension(data, exact) -> List[Check]:
    space = _space(data, exact)
    prob = ExtensionProblem.from_json(space, data["problem"])
    S = set(int(x) for x in data["forced_set"])
    checks = [
        _c("forced_set_recomputed", S == set(forced_set(prob).members)),
        _c("coincidence_equals_forced_set", set(coincidence_set(prob).members) == S),
    ]
    if "forced_pairs" in data:
        P = {(int(x), int(y)) for x, y in data["forced_pairs"]}
        checks.append(_c("forced_pairs_recomputed", P == forced_pairs(prob)))
        checks.append(_c("forced_pair_coordinates_in_forced_set", all(x in S and y in S for x, y in P)))
    return checks


def _check_extremality(data, exact) -> List[Check]:
    space = _space(data, exact)
    if "element" in data:
        m = FreeElement.from_json(space, data["element"])
        pts = sorted(m.support() | {space.base})
        members = set(pts)
        for p in pts:
            for q in pts:
                members |= space.segment(p, q).members
        return [_c("bound_recomputed", members == set(int(v) for v in data["bound"]))]
    x, y = (int(v) for v in data["pair"])
    seg = set(space.segment(x, y).members)
    checks = [
        _c("segment_recomputed", seg == set(int(v) for v in data["segment"])),
        _c("criterion", bool(data["extreme"]) == (len(seg) == 2)),
    ]
    if data.get("witness") is not None:
        mu = DeLeeuwMeasure.from_json(space, data["witness"])
        rep = combination_to_element(mu)
        checks.append(_c("splitting_represents_molecule", rep.isclose(molecule(space, x, y))))
        checks.append(_c("splitting_is_convex", space.eq(mass(mu), 1, 1)))
    return checks


def _check_demo(data, exact) -> List[Check]:
    which = data["demo"]
    r = data["report"]
    F = Fraction
    if which == "lebesgue":
        N = int(r["depth"])
        pm, res = F(r["partial_mass"]), F(r["residual_norm"])
        exp_pm = F(1, 2) * (1 - F(1, 2 ** (N + 1)))
        exp_res = F(1, 2 ** (N + 2))
        first = r["terms"][-1] if r["terms"] else None
        tol = 0 if exact else 1e-12
        return [
            _c("partial_mass_closed_form", abs(pm - exp_pm) <= tol, f"{pm} vs {exp_pm}"),
            _c("residual_closed_form", abs(res - exp_res) <= tol, f"{res} vs {exp_res}"),
            _c("sum_is_half", abs(pm + res - F(1, 2)) <= tol),
            _c(
                "first_term",
                any(
                    F(t["x"]) == F(1, 2) and F(t["y"]) == 0 and F(t["w"]) == F(1, 4)
                    for t in r["terms"]
                ),
                str(first),
            ),
        ]
    if which == "cantor":
        n = int(r["depth"])
        alpha = F(r["alpha"])
        tol = 0 if exact else 1e-9
        vals = [F(r["norm"]), F(r["pairing"]), F(r["line_norm"])]
        return [
            _c("alpha_closed_form", alpha == F(1, 2) + F(1, 2 ** (n + 1))),
            _c("norm_equals_alpha", all(abs(v - alpha) <= tol for v in vals)),
            _c("staircase_flat_on_gaps", bool(r["flat_on_gaps"])),
            _c("staircase_1_lipschitz", F(r["H_lip"]) <= 1 + F(tol)),
        ]
    if which == "snowflake":
        return [
            _c("margin_positive", F(r["min_margin"]) > 0, f"margin = {r['min_margin']}"),
            _c("tight_at_base", bool(r["base_pairs_tight"])),
            _c("omega_norms_positive_elements", bool(r["omega_norms"])),
            _c("pairs_end_at_base", bool(r["pairs_end_at_base"])),
        ]
    raise ValueError(f"unknown demo {which!r}")


_CHECKS: Dict[str, Callable] = {
    "norm": _check_norm,
    "decomposition": _check_decomposition,
    "monotonicity": _check_monotonicity,
    "extension": _check_extension,
    "extremality": _check_extremality,
    "demo": _check_demo,
}
