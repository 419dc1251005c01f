import pytest

import autlib


@pytest.fixture
def one_loop():
    return autlib.one_loop()


@pytest.fixture
def inf_a():
    return autlib.inf_a()


@pytest.fixture
def universal_ab():
    return autlib.universal_ab()


@pytest.fixture
def weak_tail():
    return autlib.weak_tail()


@pytest.fixture
def nac_pair():
    return autlib.nac_pair()


@pytest.fixture
def rabin_pass_loop():
    return autlib.rabin_pass_loop()


@pytest.fixture
def rabin_fin_loop():
    return autlib.rabin_fin_loop()


@pytest.fixture
def rabin_escape_chain():
    return autlib.rabin_escape_chain()
