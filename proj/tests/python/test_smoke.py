from fractions import Fraction
from pathlib import Path

import pytest

import ghsgls

FIXTURE = Path(__file__).resolve().parents[2] / "fixtures" / "f2_155.inst"


@pytest.fixture(scope="module")
def instance():
    return ghsgls.gen_instance(n=5, ell=31, genus=3, seed=1, min_r_bits=12)


def test_fixture_verifies():
    checks = ghsgls.verify_fixture(str(FIXTURE))
    assert checks
    assert all(c["passed"] for c in checks), [c for c in checks if not c["passed"]]


def test_fixture_endo_params():
    assert ghsgls.endo_params(FIXTURE.read_text()) == (0x18, 0x1D, 0)


def test_generated_instance_verifies(instance):
    assert all(c["passed"] for c in ghsgls.verify_instance(instance))


def test_generation_is_deterministic(instance):
    assert ghsgls.gen_instance(n=5, ell=31, genus=3, seed=1, min_r_bits=12) == instance


@pytest.mark.parametrize("mode", ["plain", "orbit"])
def test_solve_recovers_planted_log(instance, mode):
    fields = dict(line.split(" = ", 1) for line in instance.splitlines() if " = " in line)
    r, dlog = int(fields["r"], 0), int(fields["dlog"], 0)
    st = ghsgls.solve(instance, mode=mode, s=2, eps=3)
    assert st["dlog"] == dlog % r
    assert st["verified"] == st["relations"]


def test_orbit_base_is_smaller(instance):
    plain = ghsgls.solve(instance, mode="plain", s=2, eps=3)
    orbit = ghsgls.solve(instance, mode="orbit", s=2, eps=3)
    assert 4 <= plain["base_size"] / orbit["base_size"] <= 5


def test_budget_exhaustion(instance):
    with pytest.raises(ghsgls.BudgetExhausted):
        ghsgls.solve(instance, s=2, budget=3)


def test_generation_failure():
    with pytest.raises(ghsgls.GenerationFailed):
        ghsgls.gen_instance(n=3, ell=5, genus=3, seed=1, min_r_bits=16, attempts=20)


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        ghsgls.verify_instance("not an instance")


def test_census_of_generated_curve(instance):
    c = ghsgls.census(instance, s=2)
    assert c["divisors"] >= c["admitting"] > 0
    assert c["admitting"] / c["u_orbits"] <= 5


def test_cost_model():
    r = ghsgls.expected_costs(32, 32, 4, 10, 5)
    assert r["A"] == [16, 248, 5456, 130944]
    assert r["F"] == 136664
    assert r["E"] * r["M"] == 32**32
    assert r["T"] == (r["F"] + 10) * r["E"]
    assert r["T_orbit"] == (r["F"] / 5 + 10) * r["E"]
    assert isinstance(r["L"], Fraction)
