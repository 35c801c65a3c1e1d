from __future__ import annotations

import pytest
from hypothesis import settings

from blowuplab.corpus import builtin_corpus
from blowuplab.matroid import Arrangement, StretchedArrangement

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

CORPUS = builtin_corpus()
SIMPLE = [(aid, a) for aid, a in CORPUS if isinstance(a, Arrangement)]
STRETCHED = [(aid, a) for aid, a in CORPUS if isinstance(a, StretchedArrangement)]


def ids(items):
    return [aid for aid, _ in items]


@pytest.fixture
def tri() -> Arrangement:
    return Arrangement.from_forms([[1, 0], [0, 1], [1, 1]])


@pytest.fixture
def pencil4() -> Arrangement:
    return Arrangement.from_forms([[1, 0], [0, 1], [1, 1], [1, -1]])
