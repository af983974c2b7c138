"""Brute-force oracles: independent checks of the fast algorithms."""

import pytest

from antinef import corpus
from antinef.birational import Tower, free_point
from antinef.errors import PreconditionError
from antinef.graph import cycle, dual_graph, unit_cycle, zero_cycle
from antinef.ideals import colon_and_core, represent, singularity_model
from antinef.lattice import fundamental_cycle, is_antinef
from antinef.oracle import (
    SearchBound,
    enumerate_max_Y,
    fundamental_cycle_bruteforce,
    negdef_bruteforce,
)


class TestFundamentalCycleOracle:
    @pytest.mark.parametrize("name", ["A1", "A6", "D5", "E6", "HJ(11,3)", "ex244min"])
    def test_matches_worklist_algorithm(self, name):
        g = corpus.get(name).graph
        zf = fundamental_cycle(g)
        top = max(c for _, c in zf.coeffs)
        assert fundamental_cycle_bruteforce(g, SearchBound(max_coeff=top)) == zf

    def test_candidate_cap(self):
        g = corpus.get("E8").graph
        with pytest.raises(PreconditionError):
            fundamental_cycle_bruteforce(g, SearchBound(max_coeff=6, max_candidates=100))


class TestNegdefOracle:
    def test_agrees_with_sylvester(self):
        from antinef.graph import is_negative_definite

        good = corpus.get("D4").graph
        bad = dual_graph(
            "cycle3",
            [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
            [("A", "B"), ("B", "C"), ("A", "C")],
        )
        for g in (good, bad):
            assert negdef_bruteforce(g, SearchBound(max_coeff=4)) == is_negative_definite(g.matrix())


class TestEnumerateMaxY:
    def test_a1b_example(self, a1b):
        z = cycle(a1b, {"E": 1, "C1": 2})
        y = enumerate_max_Y(z, zero_cycle(a1b))
        assert y == cycle(a1b, {"C1": 1})

    def test_good_ideal_gives_zero(self):
        g = corpus.get("A2").graph
        zf = fundamental_cycle(g)
        assert enumerate_max_Y(zf, zero_cycle(g)) == zero_cycle(g)

    def test_matches_algorithm_on_chain(self, chain):
        base = corpus.get("A1").graph
        model = singularity_model(base, gorenstein=True)
        t = Tower.base(base).blow_up(free_point("E1", "C1")).blow_up(free_point("C1", "C2"))
        z = cycle(t.top, {"E1": 2, "C1": 4, "C2": 5})
        ideal = represent(model, t, 2, z)
        rep = colon_and_core(ideal)
        assert enumerate_max_Y(ideal.z, ideal.c) == rep.y

    def test_respects_cohom_cycle(self, ex244):
        t = ex244.tower
        z = ex244.cycles["Z"]
        c = unit_cycle(t.top, "E0")
        assert enumerate_max_Y(z, c) == zero_cycle(t.top)

    def test_candidate_guard(self):
        g = corpus.get("E8").graph
        z = 6 * fundamental_cycle(g)
        with pytest.raises(PreconditionError):
            enumerate_max_Y(z, zero_cycle(g), bound=SearchBound(max_candidates=10))
