import pytest

from stellar.constructions import corpus
from stellar.homology import QQ, FieldSpec


@pytest.fixture(scope="session")
def corp():
    return corpus()


@pytest.fixture(scope="session")
def fields():
    return [QQ, FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5)]
