from __future__ import annotations

import pytest

from trendgram.ngrams import Stoplist


@pytest.fixture(scope="session")
def stoplist():
    return Stoplist.default()


@pytest.fixture(scope="session")
def demo_dir(request):
    return request.config.rootpath / "demo"


@pytest.fixture(scope="session")
def golden_dir(request):
    return request.config.rootpath / "tests" / "golden"
