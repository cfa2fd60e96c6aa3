"""Acceptance criteria, one test per criterion.

Each test runs the matching claim from :mod:`funsemi.verify` at the full
configuration, prints a single ``[PASS]``/``[FAIL]`` line and asserts both
the verdict and the wall-clock budget. Everything is exact; no tolerances.
"""

import json

from funsemi.verify import CLAIMS, VerifyConfig, run_claim

CONFIG = VerifyConfig()


def _check(number: int):
    fn, budget = CLAIMS[number - 1]
    res = run_claim(fn, budget, CONFIG)
    print()
    print(res.line())
    if not res.ok:
        print("      " + json.dumps(res.detail, sort_keys=True, default=str)[:2000])
    assert res.passed, res.detail
    assert res.within_budget, f"took {res.seconds:.1f}s, budget {budget}s"


def test_criterion_01_regular_part_of_exp_c4():
    _check(1)


def test_criterion_02_superextension_of_c4():
    _check(2)


def test_criterion_03_superextension_not_in_exp_but_in_hyperspaces():
    _check(3)


def test_criterion_04_idempotent_measures_are_haar():
    _check(4)


def test_criterion_05_regular_measures_are_shifted_haar():
    _check(5)


def test_criterion_06_support_map_on_regular_parts():
    _check(6)


def test_criterion_07_clifford_pipeline_on_random_corpus():
    _check(7)


def test_criterion_08_obstruction_certificates():
    _check(8)


def test_criterion_09_conjugate_idempotents_incomparable():
    _check(9)


def test_criterion_10_invariant_elements():
    _check(10)
