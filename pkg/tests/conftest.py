import pytest

from hochschild.catalog import standard_corpus
from hochschild.rings import GF, QQ, ZZ

F2 = GF(2)


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus({"Z": ZZ, "Q": QQ, "F2": F2})


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Fixture algebras of rank at most 4 (the desk-scale loop set)."""
    return {k: v for k, v in corpus.items() if v.rank <= 4}
