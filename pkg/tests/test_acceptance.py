"""Acceptance suite: one test per acceptance check, each printing a PASS/FAIL line."""

import pytest

from forest_trees.acceptance import CHECKS, run_checks


@pytest.mark.parametrize("check", CHECKS, ids=[c.name for c in CHECKS])
def test_acceptance(check, capsys):
    [result] = run_checks(only=[check.name])
    verdict = "PASS" if result["pass"] else "FAIL"
    with capsys.disabled():
        print(f"\n{verdict} {check.name} [{check.title}] ({result['seconds']}s): {result['detail']}")
    assert result["pass"], result["detail"]
