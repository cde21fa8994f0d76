import pytest

from relfrag import (
    Vocabulary,
    from_theory,
    infer_vocabulary,
    parse_formula,
    smokers_fixture,
    two_smokers_fixture,
)


@pytest.fixture
def smokers():
    return smokers_fixture()


@pytest.fixture
def two_smokers():
    return two_smokers_fixture()


@pytest.fixture
def smokers_vocab(smokers):
    return infer_vocabulary(smokers)


@pytest.fixture
def alpha(smokers_vocab):
    return parse_formula("forall X : sm(X)", smokers_vocab)


@pytest.fixture
def beta(smokers_vocab):
    return parse_formula("exists X : exists Y : fr(X,Y)", smokers_vocab)


@pytest.fixture
def alpha_hyp(alpha):
    return from_theory([alpha], 1)


@pytest.fixture
def beta_hyp(beta):
    return from_theory([beta], 2)


@pytest.fixture
def edge_vocab():
    return Vocabulary.make({"edge": 2}, [f"v{i}" for i in range(8)])
