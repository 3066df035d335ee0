import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from treegram.analytic import model_trees
from treegram.trees import Tree

sys.path.insert(0, str(Path(__file__).parent))

LABELS = ["S", "NP", "VP", "PP", "SBAR", "ADJP"]
TAGS = ["Det", "N", "V", "P", "JJ", ",", "-LRB-", "PRP$"]
WORDS = ["a", "dog", "ran", "in", "big", ",", "-LRB-", "it's", "3.5", "x=y"]


@st.composite
def preterminals(draw):
    return Tree(draw(st.sampled_from(TAGS)), [Tree(draw(st.sampled_from(WORDS)))])


def trees(max_leaves=12):
    """Arbitrary well-formed trees with preterminal leaves."""
    return st.recursive(
        preterminals(),
        lambda kids: st.builds(Tree, st.sampled_from(LABELS),
                               st.lists(kids, min_size=1, max_size=4)),
        max_leaves=max_leaves,
    )


@pytest.fixture
def a1():
    return model_trees("penn")[0]


@pytest.fixture
def b1():
    return model_trees("penn")[1]


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
