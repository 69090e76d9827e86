"""End-to-end acceptance criteria.

Each test runs one checkable claim (the same code ``planeproj verify`` runs),
requires it to pass within its wall-clock limit, and prints one PASS/FAIL line.
Run alone with ``pytest -m acceptance -s``.
"""
import json
import time

import pytest

from planeproj.cli import main
from planeproj.verify import claim_by_key, run_claim

SEED = 42
pytestmark = pytest.mark.acceptance


def _report(capsys, number, key, ok, seconds, limit, note=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} [{key}] {seconds:7.2f}s (limit {limit:g}s){note}"
    with capsys.disabled():
        print("\n" + line)


def _check_claim(capsys, number, key):
    claim = claim_by_key(key)
    res = run_claim(claim, SEED)
    ok = res.passed and res.in_time
    _report(capsys, number, key, ok, res.seconds, claim.limit, "" if res.passed else f" {res.error}")
    assert res.passed, (res.error, res.details)
    assert res.in_time, f"{key} took {res.seconds:.1f}s, limit {claim.limit}s"
    return res


def _cli(capsys, *argv):
    t = time.perf_counter()
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), time.perf_counter() - t


def test_01_hurwitz_cubic(capsys):
    res = _check_claim(capsys, 1, "hurwitz-cubic")
    assert res.details["hurwitz_number"] == "40"
    code, rep, secs = _cli(capsys, "hurwitz", "--degree", "3", "--genus", "1")
    assert code == 0 and rep["results"]["hurwitz_number"] == "40" and secs < 1.0
    assert {"frobenius", "orbit-dp"} <= set(rep["results"]["methods"])


def test_02_hurwitz_quartic(capsys):
    res = _check_claim(capsys, 2, "hurwitz-quartic")
    assert res.details["hurwitz_number"] == str(255 * (3 ** 10 - 1) // 2) == "7528620"
    code, rep, secs = _cli(capsys, "hurwitz", "--degree", "4", "--genus", "3")
    assert code == 0 and rep["results"]["hurwitz_number"] == "7528620" and secs < 10.0


def test_03_oracle_equivalence(capsys):
    res = _check_claim(capsys, 3, "hurwitz-oracles")
    assert res.details["profiles"] > 500


def test_04_collinearity_criterion(capsys):
    res = _check_claim(capsys, 4, "collinearity-criterion")
    assert res.details["violations"] == 0 and res.details["random"]["configurations"] == 10_000


def test_05_quartic_pencil(capsys):
    res = _check_claim(capsys, 5, "quartic-pencil")
    assert len(set(res.details["curves"])) == 3


def test_06_projection_criterion(capsys):
    res = _check_claim(capsys, 6, "projection-criterion")
    assert all(c["trials"] >= 500 and c["falsifications"] == 0 and c["small_moving"] == 0
               for c in res.details["curves"])


def test_07_branch_count(capsys):
    res = _check_claim(capsys, 7, "branch-count")
    assert res.details["fermat_fibers"] == [[3], [3], [3]]


def test_08_pencil_group(capsys):
    res = _check_claim(capsys, 8, "pencil-group")
    assert res.details["pairs"] == res.details["witnesses"] == 50


def test_09_cubic_shift_projection(capsys):
    res = _check_claim(capsys, 9, "cubic-shift-projection")
    assert res.details["decompositions"] == 100 and res.details["points"] <= 40


def test_10_recorded_constants(capsys):
    _check_claim(capsys, 10, "recorded-constants")
    code, rep, _ = _cli(capsys, "constants")
    values = {c["key"]: c["value"] for c in rep["results"]["constants"]}
    assert code == 0
    assert values["h_plane_4"] == 3_542_880 and values["deg_B"] == 3762
    assert values["beta8_I3"] == 8400 and values["beta13_I4"] == 304_200 and values["dim_PH_4"] == 11
    assert all(c["claim"] for c in rep["results"]["constants"])
