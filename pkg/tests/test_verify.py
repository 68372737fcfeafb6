import pytest

from diagcat import verify
from diagcat.diagram import Diagram
from diagcat.ring import ZZ, prime_field

SMALL_N = {
    "mirror-diagram": 4,
    "ls-control": 3,
    "easy-trundle": 5,
    "hard-trundle": 7,
    "single-trundle": 10,
    "spheres": 8,
    "rho-commute": 4,
    "my-first-ideal": 3,
    "direct-sum": 4,
    "retract": 3,
}


@pytest.mark.parametrize("name", sorted(verify.LEMMAS))
def test_lemma_suites_pass(name):
    res = verify.run_lemma(name, SMALL_N[name])
    assert res.passed, res.to_json()
    assert res.checked > 0
    assert res.witness is None


def test_lemma_registry_names():
    assert set(verify.LEMMAS) == set(SMALL_N)
    with pytest.raises(verify.VerifyError):
        verify.run_lemma("no-such-lemma")


def test_structural_suites_pass():
    for res in (
        verify.closure_suite(3),
        verify.associativity_suite(7, per_family=50, n_max=3),
        verify.filtration_suite(3),
        verify.reachability_suite(4),
        verify.double_diagram_suite(2),
        verify.augmentation_suite(2),
    ):
        assert res.passed, res.to_json()


def test_parallel_matches_serial():
    a = verify.run_lemma("mirror-diagram", 4, jobs=1).to_json()
    b = verify.run_lemma("mirror-diagram", 4, jobs=2).to_json()
    assert a == b


def test_theorem_reports_both_sides():
    res = verify.verify_theorem("brauer-sroka", 3, ZZ, 0, 1, 2)
    assert res.passed
    d = res.details
    assert d["lhs"] == d["rhs"] == [{"rank": 1, "torsion": []}, {"rank": 0, "torsion": [2]}, {"rank": 0, "torsion": []}]
    assert d["hypotheses"]["status"] == "passed"
    assert "these parameter values" in d["scope"]


def test_theorem_hypothesis_errors():
    with pytest.raises(verify.VerifyError):
        verify.verify_theorem("sroka", 4, prime_field(2), 0, 1, 2)
    with pytest.raises(verify.VerifyError):
        verify.verify_theorem("rook-invertible", 2, ZZ, 0, 2, 2)
    with pytest.raises(verify.VerifyError):
        verify.verify_theorem("tl-recovery", 2, prime_field(3), 0, 1, 2)
    with pytest.raises(verify.VerifyError):
        verify.verify_theorem("bogus", 2, ZZ, 0, 1, 2)


def test_theorem_mismatch_produces_witness():
    # the Temperley-Lieb side of brauer-recovery is not the symmetric group side
    spec = verify.THEOREMS["brauer-recovery"]
    try:
        verify.THEOREMS["brauer-recovery"] = verify.TheoremSpec(
            verify.Family.TEMPERLEY_LIEB, None, "symmetric", "delta-unit", "mirror"
        )
        res = verify.verify_theorem("brauer-recovery", 2, ZZ, 1, 1, 2, hypotheses=False)
    finally:
        verify.THEOREMS["brauer-recovery"] = spec
    assert not res.passed
    assert res.witness["degree"] == 1
    assert res.replay.startswith("diagcat homology --family tl --n 2 --ring z")
