"""Pairing, fundamental/canonical cycles, rationality, colength."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antinef import corpus
from antinef.errors import PreconditionError
from antinef.graph import cycle, dual_graph, unit_cycle
from antinef.lattice import (
    antinef_closure,
    arithmetic_genus,
    canonical_cycle,
    colength,
    contracts_to_smooth,
    epsilon,
    fundamental_cycle,
    is_antinef,
    is_numerically_gorenstein,
    is_rational,
    k_dot,
    multiplicity,
    pair,
)


class TestFundamentalCycle:
    def test_an_is_reduced(self):
        # the fundamental cycle of A_n is the sum of all curves
        for n in (1, 3, 6, 9):
            g = corpus.get(f"A{n}").graph
            zf = fundamental_cycle(g)
            assert zf == cycle(g, {vid: 1 for vid in g.ids})

    def test_e8_highest_root(self):
        # coefficients of the E8 highest root, cross-checked by brute force
        # in the acceptance suite
        g = corpus.get("E8").graph
        zf = fundamental_cycle(g)
        assert zf.as_dict() == {
            "E1": 2, "E2": 4, "E3": 6, "E4": 5, "E5": 4, "E6": 3, "E7": 2, "E8": 3
        }

    def test_start_independence(self):
        g = corpus.get("D5").graph
        zfs = {fundamental_cycle(g, start=vid) for vid in g.ids}
        assert len(zfs) == 1

    def test_is_antinef_and_minimal_support(self):
        for name in ("A4", "D6", "E7", "HJ(11,4)", "ex244min"):
            g = corpus.get(name).graph
            zf = fundamental_cycle(g)
            assert is_antinef(zf)
            assert set(zf.support) == set(g.ids)


class TestAntinefClosure:
    def test_closure_dominates_and_is_antinef(self, a1b):
        d = cycle(a1b, {"C1": 1})
        z = antinef_closure(d)
        assert is_antinef(z) and z.dominates(d)

    def test_closure_of_antinef_is_identity(self):
        g = corpus.get("D4").graph
        zf = fundamental_cycle(g)
        assert antinef_closure(zf) == zf

    def test_trace_replays(self):
        g = corpus.get("E6").graph
        steps = []
        z = antinef_closure(unit_cycle(g, "E1"), on_step=lambda vid, c: steps.append((vid, c)))
        replay = {vid: 0 for vid in g.ids}
        replay["E1"] = 1
        for vid, c in steps:
            replay[vid] = c
        assert cycle(g, replay) == z

    def test_rejects_non_effective_seed(self):
        g = corpus.get("A2").graph
        with pytest.raises(PreconditionError):
            antinef_closure(cycle(g, {"E1": -1}))


class TestCanonicalCycle:
    def test_ade_canonical_is_zero(self):
        for name in ("A3", "D4", "E6", "E8"):
            assert canonical_cycle(corpus.get(name).graph).is_zero

    def test_residual_equation(self):
        from antinef.lattice import row_pairing

        for name in ("HJ(5,2)", "HJ(12,5)", "ex244min"):
            g = corpus.get(name).graph
            zk = canonical_cycle(g)
            assert all(row_pairing(zk, vid) + g.vertex(vid).kappa == 0 for vid in g.ids)

    def test_hj_canonical_is_fractional(self):
        zk = canonical_cycle(corpus.get("HJ(5,2)").graph)
        assert not zk.is_integral
        assert not is_numerically_gorenstein(corpus.get("HJ(5,2)").graph)

    def test_ex244_canonical(self, ex244):
        base = ex244.tower.levels[0]
        assert canonical_cycle(base) == unit_cycle(base, "E0")
        assert is_numerically_gorenstein(base)


class TestGenusAndRationality:
    def test_pa_of_single_curves(self):
        g = corpus.get("A1").graph
        assert arithmetic_genus(unit_cycle(g, "E1")) == 0
        e0 = corpus.get("ex244min").graph
        assert arithmetic_genus(unit_cycle(e0, "E0")) == 1

    def test_rational_corpus(self):
        for name in ("A7", "D8", "E7", "HJ(12,7)"):
            assert is_rational(corpus.get(name).graph)
        assert not is_rational(corpus.get("ex244min").graph)

    def test_pa_additive_formula(self, chain):
        # p_a(A+B) = p_a(A) + p_a(B) + A.B - 1
        a = cycle(chain, {"E1": 1, "C1": 2})
        b = cycle(chain, {"C1": 1, "C2": 3})
        lhs = arithmetic_genus(a + b)
        assert lhs == arithmetic_genus(a) + arithmetic_genus(b) + pair(a, b) - 1


class TestColengthAndMultiplicity:
    def test_a1_maximal_ideal(self):
        g = corpus.get("A1").graph
        zf = fundamental_cycle(g)
        assert multiplicity(zf) == 2
        assert colength(zf) == 1

    def test_ex244_values(self, ex244):
        base = ex244.tower.levels[0]
        m3 = 3 * unit_cycle(base, "E0")
        assert multiplicity(m3) == 18
        assert colength(m3, pg=1, h1=0) == 7
        z = ex244.cycles["Z"]
        assert multiplicity(z) == 12
        assert k_dot(z) == 0
        assert colength(z, pg=1, h1=1) == 6

    def test_h1_bounds(self):
        g = corpus.get("A1").graph
        zf = fundamental_cycle(g)
        with pytest.raises(PreconditionError):
            colength(zf, pg=0, h1=1)

    def test_non_antinef_rejected(self, a1b):
        with pytest.raises(PreconditionError):
            colength(unit_cycle(a1b, "E"))

    def test_epsilon_range(self):
        assert epsilon(1, 0, 0, 0) == 1
        assert epsilon(1, 1, 1, 1) == 0
        with pytest.raises(PreconditionError):
            epsilon(1, 1, 1, 0)  # value -1 falls outside [0, pg]


class TestContractsToSmooth:
    def test_zero_cycle(self):
        from antinef.graph import zero_cycle

        assert contracts_to_smooth(zero_cycle(corpus.get("A1").graph))

    def test_exceptional_cycle_of_blowup(self, a1b):
        assert contracts_to_smooth(unit_cycle(a1b, "C1"))
        assert not contracts_to_smooth(unit_cycle(a1b, "E"))


_SMALL = ["A1", "A2", "A3", "D4", "HJ(5,2)", "HJ(7,3)"]


@given(
    name=st.sampled_from(_SMALL),
    data=st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4),
)
def test_closure_is_monotone_and_idempotent(name, data):
    g = corpus.get(name).graph
    d = cycle(g, dict(zip(g.ids, data)))
    if d.is_zero:
        d = unit_cycle(g, g.ids[0])
    z = antinef_closure(d)
    assert is_antinef(z) and z.dominates(d)
    assert antinef_closure(z) == z
    bigger = antinef_closure(d + unit_cycle(g, g.ids[-1]))
    assert bigger.dominates(z) or bigger == z


@given(
    a=st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
    b=st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
)
def test_pairing_is_symmetric_bilinear(a, b):
    g = corpus.get("D4").graph
    za = cycle(g, dict(zip(g.ids, a)))
    zb = cycle(g, dict(zip(g.ids, b)))
    assert pair(za, zb) == pair(zb, za)
    assert pair(za + zb, zb) == pair(za, zb) + pair(zb, zb)
    if not za.is_zero:
        assert pair(za, za) < 0  # negative definiteness
