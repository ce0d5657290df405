import pytest

from gmmds.codes import CodeSpec, generator
from gmmds.errors import PreconditionFailed
from gmmds.exactla import Mat
from gmmds.gf import GF
from gmmds.suite import CHECKERS, run_conjecture, run_equivalence_trial, trial_rng


def test_trial_rng_independent_of_order():
    assert trial_rng(3, 5).random() == trial_rng(3, 5).random()
    assert trial_rng(3, 5).random() != trial_rng(3, 6).random()


def test_trials_agree_and_replay():
    for i in range(12):
        rep = run_equivalence_trial(42, i)
        assert rep.agree, rep.to_json()
        assert set(rep.verdicts) == set(CHECKERS)
        assert run_equivalence_trial(42, i).to_json() == rep.to_json()


def test_injected_bug_breaks_agreement():
    assert not run_equivalence_trial(1, 0, inject_bug="gzp_ell").agree


def test_conjecture_rs():
    F = GF(11)
    G = generator(CodeSpec.reed_solomon(F, 3), list(range(8)))
    rep = run_conjecture(G, 5, 10, 3, seed=0)
    assert rep.trials == 10
    assert rep.failure_rate >= 0
    assert run_conjecture(G, 8, 10, 2, seed=0).trials == 1
    with pytest.raises(PreconditionFailed):
        run_conjecture(Mat(GF(2), [[1, 0, 1], [0, 1, 1]]).vstack(Mat(GF(2), [[1, 1, 0]])), 2, 3, 2, 0)
