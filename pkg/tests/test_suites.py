import json

import pytest

from tdhom.exceptions import InputError
from tdhom.suites import SUITES, suite_lemma5, suite_lovasz_decomp, suite_oracle, suite_triangular


@pytest.mark.parametrize("name", sorted(SUITES))
def test_reports_are_json_and_clean(name):
    small = {
        "main": dict(n=3, k=2), "lovasz-decomp": dict(n=3, k=2), "triangular": dict(n=3),
        "lemma4": dict(trials=20), "lemma5": dict(n=3), "wr": dict(samples=10), "radius": dict(n=5),
        "counterexample": dict(m=1), "theorem-pp": dict(n=3, k=2), "oracle": dict(pattern_n=3, target_n=3, game_n=3),
    }
    rep = SUITES[name](**small[name])
    assert rep["schema"] == f"tdhom.verify.{rep['suite']}/1"
    assert rep["ok"] and rep["violations"] == []
    json.dumps(rep)


def test_parallel_runs_agree():
    a = suite_lovasz_decomp(n=3, k=2, jobs=1)
    b = suite_lovasz_decomp(n=3, k=2, jobs=2)
    assert (a["checks"], a["violations"]) == (b["checks"], b["violations"])
    assert suite_triangular(n=3, jobs=2)["ok"]


def test_lemma5_and_oracle_defaults():
    rep = suite_lemma5()
    assert rep["ok"] and rep["matched"] + rep["mismatched"] > 0
    assert suite_oracle(pattern_n=4, target_n=3, game_n=4, colors=2)["ok"]


def test_bad_colours():
    with pytest.raises(InputError):
        suite_triangular(n=2, colors=3)
