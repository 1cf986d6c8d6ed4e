import os
import sys
import warnings

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

from bmhomology.corpus import CORPUS_NAMES, corpus_table  # noqa: E402
from bmhomology.quasigroup import cyclic_group  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    return {name: corpus_table(name) for name in CORPUS_NAMES}


@pytest.fixture
def A1():
    return corpus_table("A1")


@pytest.fixture(autouse=True)
def _quiet_identity_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield


def z(n):
    return cyclic_group(n)
