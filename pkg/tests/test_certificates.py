import copy

import pytest

from freelip import certificates
from freelip.extension import ExtensionProblem, forced_pairs, forced_set
from freelip.free import FreeElement, DeLeeuwMeasure
from freelip.line_lab import cantor_demo, lebesgue_series
from freelip.monotonicity import check_monotone_lp
from freelip.transport import coupling_to_deleeuw, solve


def _norm_payload(space, m):
    sol = solve(m)
    return {
        "exact": space.exact,
        "space": space,
        "element": m,
        "norm": sol.cost,
        "norming": sol.potential,
        "coupling": sol.coupling,
    }


@pytest.mark.parametrize("exact", [True, False])
def test_norm_certificate(exact, line012, line012_float):
    sp = line012 if exact else line012_float
    m = FreeElement.from_weights(sp, {1: 1, 2: -2})
    cert = certificates.build("norm", _norm_payload(sp, m))
    assert cert.ok
    same, checks = certificates.verify(cert.to_json())
    assert same and all(c.passed for c in checks)


def test_tampered_norm_fails(line012):
    m = FreeElement.from_weights(line012, {1: 1, 2: -2})
    data = certificates.build("norm", _norm_payload(line012, m)).to_json()
    bad = copy.deepcopy(data)
    bad["payload"]["norm"] = 2
    same, checks = certificates.verify(bad)
    assert not same
    assert not {c.name: c.passed for c in checks}["coupling_cost"]


def test_decomposition_certificate(line012):
    m = FreeElement.from_weights(line012, {1: 1, 2: -2})
    sol = solve(m)
    payload = {
        "exact": True,
        "space": line012,
        "element": m,
        "measure": coupling_to_deleeuw(sol.coupling),
        "norm": sol.cost,
        "norming": sol.potential,
    }
    cert = certificates.build("decomposition", payload)
    assert cert.ok and certificates.verify(cert.to_json())[0]


def test_monotonicity_certificate(line012):
    mu = DeLeeuwMeasure.from_weights(line012, {(0, 1): 1, (1, 2): 2})
    payload = {
        "exact": True,
        "space": line012,
        "pairs": [list(p) for p in mu.pairs()],
        "certificate": check_monotone_lp(line012, mu.pairs()),
        "measure": mu,
    }
    cert = certificates.build("monotonicity", payload)
    assert cert.ok
    names = [c.name for c in cert.checks]
    assert "witness_attains_mass" in names


def test_extension_certificate(line012):
    prob = ExtensionProblem.build(line012, {0: 0, 2: 2})
    payload = {
        "exact": True,
        "space": line012,
        "problem": prob,
        "forced_set": forced_set(prob).sorted(),
        "forced_pairs": [list(p) for p in sorted(forced_pairs(prob))],
    }
    assert certificates.build("extension", payload).ok
    payload["forced_set"] = [0, 2]
    assert not certificates.build("extension", payload).ok


def test_demo_certificates():
    cert = certificates.build("demo", {"exact": True, "demo": "lebesgue", "report": lebesgue_series(2).to_json()})
    assert cert.ok
    cert = certificates.build("demo", {"exact": True, "demo": "cantor", "report": cantor_demo(3).to_json()})
    assert cert.ok


def test_unknown_kind():
    with pytest.raises(ValueError):
        certificates.build("nope", {})
