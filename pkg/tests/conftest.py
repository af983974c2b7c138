import pytest

from antinef import corpus


@pytest.fixture
def a1b():
    """Blown-up A1: E(-3) -- C1(-1), the running two-curve example."""
    from antinef.graph import dual_graph

    return dual_graph("a1b", [("E", -3, 1), ("C1", -1, -1)], [("E", "C1")])


@pytest.fixture
def chain():
    """Three-curve chain E1(-3) -- C1(-2) -- C2(-1) used for the
    two-iteration good-closure example."""
    from antinef.graph import dual_graph

    return dual_graph(
        "chain",
        [("E1", -3, 1), ("C1", -2, 0), ("C2", -1, -1)],
        [("E1", "C1"), ("C1", "C2")],
    )


@pytest.fixture
def ex244():
    return corpus.get("ex244blown")
