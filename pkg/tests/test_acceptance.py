"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Expected values are either fixed by the source material or were
frozen from the independent oracles exercised in the module test files
(box scans, brute-force socle scans, membership predicates).  Runtime
budgets are enforced with the jit kernels pre-warmed by the session fixture.
"""

import math
import random
import time

import pytest

from epsmult.asymptotics import fit_quasi_polynomial
from epsmult.cohomology import h0_length, h0_length_takayama, h0_of_quotient
from epsmult.families import (CounterRule, FamilySpec, LimitRecursiveRule,
                              PowerRule, eval_family, growth_constants)
from epsmult.ideal_core import MonomialIdeal
from epsmult.polyhedra import analytic_spread, out_region
from epsmult.repro import (counter_reproduction, fit_epsilon,
                           hyperbola_sum_closed_form, irrational_case,
                           jm_fixed_cases, limit_sandwich, limit_trend,
                           lower_family_erratum, mixed_grid_case, random_ideal)

from conftest import brute_socle

SEED = 2024


class Stopwatch:
    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.start


def report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_1_counter_reproduction():
    rng = random.Random(SEED)
    random_list = tuple(rng.randint(0, 60) for _ in range(30))
    with Stopwatch() as sw:
        results = {
            "n^2": counter_reproduction("n^2", 30),
            "n^3": counter_reproduction("n^3", 30),
            "random": counter_reproduction(random_list, 30),
        }
    ok = all(r["pass"] for r in results.values()) and sw.elapsed < 5.0
    report(1, ok, f"lengths equal a_n for three sequences, 1<=n<=30 ({sw.elapsed:.2f}s)")


def test_criterion_2_hyperbola_closed_form_and_erratum():
    with Stopwatch() as sw:
        closed = hyperbola_sum_closed_form(40)
        erratum = lower_family_erratum((2, 3))
    rows = {r["n"]: r for r in erratum["rows"]}
    erratum_ok = (erratum["flagged"]
                  and rows[2]["direct"] == 8 and rows[2]["formula"] == 10
                  and rows[3]["direct"] == 32 and rows[3]["formula"] == 36)
    ok = closed["pass"] and erratum_ok and sw.elapsed < 5.0
    report(2, ok, "sum closed form exact for n<=40; lower-family form flagged "
                  f"(direct 8/32 vs formula 10/36) ({sw.elapsed:.2f}s)")


def test_criterion_3_limit_sandwich_and_trend():
    with Stopwatch() as sw:
        sandwich = limit_sandwich(25)
        trend = limit_trend((25, 50, 100), (2.0, 2.6))
    values = [round(v["value"], 4) for v in trend["normalized"]]
    ok = sandwich["pass"] and trend["pass"] and sw.elapsed < 60.0
    report(3, ok, f"containments+saturations for 2<=n<=25; l/(n^2 ln n) = {values} "
                  f"decreasing, final in [2.0, 2.6] ({sw.elapsed:.2f}s)")


@pytest.fixture(scope="module")
def random_d2_ideals():
    rng = random.Random(SEED)
    return [random_ideal(rng, 2, max_exp=5, max_gens=5) for _ in range(25)]


@pytest.fixture(scope="module")
def random_d3_ideals():
    rng = random.Random(SEED + 1)
    return [random_ideal(rng, 3, max_exp=4, max_gens=5) for _ in range(10)]


def test_criterion_4_jm_volume_identity(random_d2_ideals):
    with Stopwatch() as sw:
        fixed = jm_fixed_cases()
        mismatches = []
        for ideal in random_d2_ideals:
            eps_fit, _ = fit_epsilon(ideal, n_max=12)
            eps_vol = out_region(ideal).epsilon
            if eps_fit != eps_vol:
                mismatches.append(ideal.gens)
    ok = fixed["pass"] and not mismatches and sw.elapsed < 30.0
    report(4, ok, f"2!*(fitted leading coeff, n<=12) == d!vol(out) exactly on 3 fixed "
                  f"+ {len(random_d2_ideals)} random ideals ({sw.elapsed:.2f}s)")


def test_criterion_5_positivity_equivalence(random_d2_ideals, random_d3_ideals):
    with Stopwatch() as sw:
        bad = []
        for ideal in random_d2_ideals + random_d3_ideals:
            positive = out_region(ideal).epsilon > 0
            maximal = analytic_spread(ideal) == ideal.d
            if positive != maximal:
                bad.append(ideal.gens)
    ok = not bad and sw.elapsed < 30.0
    report(5, ok, f"epsilon > 0 iff spread = d on {len(random_d2_ideals) + len(random_d3_ideals)} "
                  f"random ideals, no exceptions ({sw.elapsed:.2f}s)")


def test_criterion_6_takayama_oracle():
    rng = random.Random(SEED + 2)
    fixed = [
        MonomialIdeal.from_gens(2, [(1, 2), (2, 0)]),
        MonomialIdeal.from_gens(2, [(1, 0)]),
        MonomialIdeal.from_gens(2, [(2, 0), (0, 2)]),
        MonomialIdeal.from_gens(3, [(1, 1, 1)]),
        MonomialIdeal.from_gens(2, [(1, 9), (2, 0)]),
    ]
    ideals = fixed + [random_ideal(rng, rng.choice((1, 2, 3)), 4, 4) for _ in range(100)]
    with Stopwatch() as sw:
        bad = [i.gens for i in ideals
               if h0_length(i, method="box-enumeration").length != h0_length_takayama(i).length]
    ok = not bad and sw.elapsed < 30.0
    report(6, ok, f"box count == homology count on {len(ideals)} ideals ({sw.elapsed:.2f}s)")


def test_criterion_7_mixed_epsilon_grid():
    with Stopwatch() as sw:
        result = mixed_grid_case(grid_max=8)
    ok = (result["pass"]
          and result["top_form"] == {"0,2": "1/1", "1,1": "2/1", "2,0": "1/1"}
          and result["mixed"] == {"0,2": "2/1", "1,1": "2/1", "2,0": "2/1"}
          and sw.elapsed < 30.0)
    report(7, ok, f"top form (n1+n2)^2 with mixed epsilons (2,2,2), residue-independent "
                  f"({sw.elapsed:.2f}s)")


def test_criterion_8_irrational_family():
    with Stopwatch() as sw:
        result = irrational_case(n=10_000, k=2)
    ok = result["pass"] and sw.elapsed < 1.0
    report(8, ok, f"|l/n - sqrt2| <= 2/n certified by isqrt bounds at n=10^4, "
                  f"l={result['length']} ({sw.elapsed:.2f}s)")


def test_criterion_9_growth_constants():
    power = FamilySpec(2, PowerRule(((1, 2), (2, 0))))
    counter = FamilySpec(2, CounterRule("n^2"))
    with Stopwatch() as sw:
        power_ok = all(growth_constants(power, n).minimal_c_linear == 3
                       for n in range(2, 21))
        counter_ok = True
        for n in range(2, 31):
            g = growth_constants(counter, n)
            if g.minimal_c_linear < n or g.minimal_c_quadratic > 2:
                counter_ok = False
        # brute-force socle-degree cross-check on a sample of indices
        brute_ok = True
        for n in (2, 5, 9, 14, 20):
            ideal = eval_family(power, n)
            pts = brute_socle(ideal, ideal.max_exponents())
            if growth_constants(power, n).max_socle_degree != max(sum(p) for p in pts):
                brute_ok = False
        for n in (2, 7, 17, 30):
            ideal = eval_family(counter, n)
            pts = brute_socle(ideal, ideal.max_exponents())
            if growth_constants(counter, n).max_socle_degree != max(sum(p) for p in pts):
                brute_ok = False
    ok = power_ok and counter_ok and brute_ok
    report(9, ok, "power family has c_lin = 3 (bounded); counter family has "
                  f"c_lin >= n, c_quad <= 2; brute-force scans agree ({sw.elapsed:.2f}s)")


def test_criterion_10_quotient_step_fit():
    I = MonomialIdeal.from_gens(2, [(1, 2), (2, 0)])
    with Stopwatch() as sw:
        from epsmult.asymptotics import LengthTable
        entries = {(n,): h0_of_quotient(I.power(n), I.power(n + 1)).length
                   for n in range(3, 16)}
        table = LengthTable(1, entries, "quotient-steps", ("box-enumeration",))
        quasi = fit_quasi_polynomial(table, degree=1, period_max=4, holdout=3)
    ok = (quasi.period == 1
          and quasi.coeffs[((0,), (1,))] == 4
          and quasi.coeffs[((0,), (0,))] == 2)
    report(10, ok, f"h0(I^n/I^(n+1)) = 4n + 2 fits degree <= 1 exactly with 3 holdout "
                   f"points ({sw.elapsed:.2f}s)")


def test_trend_values_recorded_for_reference():
    # companion detail for criterion 3: the sampled normalized values
    spec = FamilySpec(2, LimitRecursiveRule())
    for n in (25, 50, 100):
        value = h0_length(eval_family(spec, n)).length / (n * n * math.log(n))
        assert 2.0 <= value <= 2.6
