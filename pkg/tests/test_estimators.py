import doctest

import numpy as np
import pytest
from sklearn.base import clone

import pmss.estimators
from pmss import DDA, AlphabetSolver, DDAStar, ExhaustiveSolver, GreedyA, GreedyD
from pmss.core import DNA, CapacityError, ParameterError, SequencesSet, encode_all

ALL = [AlphabetSolver, DDA, DDAStar, GreedyA, GreedyD]


def test_module_doctest():
    assert doctest.testmod(pmss.estimators).failed == 0


@pytest.mark.parametrize("cls", ALL)
def test_fit_on_figure1(cls, figure1):
    est = cls(n_sets=4, capacity=3).fit(figure1)
    assert est.labels_.shape == (12,) and np.bincount(est.labels_).tolist() == [3, 3, 3, 3]
    assert est.cost_sc_ <= est.cost_mm_
    assert est.performance_ratio() <= 1.0
    assert len(est.process_sequences()) == 4
    assert (cls(n_sets=4, capacity=3).fit_predict(figure1) == est.labels_).all()


def test_figure1_costs(figure1):
    assert DDA(4, 3).fit(figure1).cost_mm_ == 78
    assert min(DDAStar(4, 3, window=3, random_state=s).fit(figure1).cost_mm_ for s in range(10)) <= 78


def test_params_round_trip():
    est = DDAStar(n_sets=3, depositor="sh", window=2, random_state=4)
    assert clone(est).get_params() == est.get_params()
    assert est.set_params(window=5).window == 5


def test_capacity_defaults_to_even_fill():
    est = DDA(n_sets=3).fit(["AC", "CA", "GT", "TG", "AA"])
    assert est.capacity_ == 2


def test_accepts_encoded_input():
    seqs = encode_all(["AC", "CA", "GT", "TG"], DNA)
    assert GreedyD(2, alphabet=DNA).fit(seqs).cost_mm_ > 0
    assert GreedyD(2).fit(SequencesSet(tuple(seqs), DNA)).alphabet_ == DNA
    with pytest.raises(ParameterError):
        GreedyD(2).fit(seqs)


@pytest.mark.parametrize("est, X", [
    (DDA(n_sets=0), ["AC"]),
    (DDA(n_sets=1, capacity=1), ["AC", "CA"]),
    (DDA(n_sets=1, depositor="x"), ["AC"]),
    (DDA(n_sets=1, lookahead=1, commit=2), ["AC"]),
    (DDA(n_sets=1), []),
])
def test_invalid_input(est, X):
    with pytest.raises((ParameterError, CapacityError)):
        est.fit(X)


def test_exhaustive_dominates():
    X = ["0110", "1", "001", "10", "0", "111"]
    opt = ExhaustiveSolver(2, 3).fit(X)
    for cls in ALL:
        est = cls(2, 3).fit(X)
        assert opt.cost_mm_ <= est.cost_mm_ and opt.cost_sc_ <= est.cost_sc_


def test_unfitted():
    with pytest.raises(ParameterError):
        DDA(2).performance_ratio()
