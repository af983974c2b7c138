"""Dual graph construction, validation, and cycle arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from antinef import corpus
from antinef.errors import InputError
from antinef.graph import (
    cycle,
    det_bareiss,
    dual_graph,
    is_negative_definite,
    unit_cycle,
    validate_graph,
    zero_cycle,
)


class TestConstruction:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(InputError):
            dual_graph("g", [("E1", -2, 0), ("E1", -3, 1)])

    def test_self_loop_rejected(self):
        with pytest.raises(InputError):
            dual_graph("g", [("E1", -2, 0)], [("E1", "E1")])

    def test_edge_to_unknown_vertex_rejected(self):
        with pytest.raises(InputError):
            dual_graph("g", [("E1", -2, 0)], [("E1", "E2")])

    def test_empty_graph_rejected(self):
        with pytest.raises(InputError):
            dual_graph("g", [])

    def test_nonpositive_multiplicity_rejected(self):
        with pytest.raises(InputError):
            dual_graph("g", [("E1", -2, 0), ("E2", -2, 0)], [("E1", "E2", 0)])

    def test_parallel_edges_merge(self):
        g = dual_graph("g", [("A", -3, 1), ("B", -3, 1)], [("A", "B"), ("B", "A")])
        assert g.edge_mult("A", "B") == 2

    def test_vertex_order_is_canonical(self):
        g1 = dual_graph("g", [("A", -2, 0), ("B", -2, 0)], [("A", "B")])
        g2 = dual_graph("g", [("B", -2, 0), ("A", -2, 0)], [("B", "A")])
        assert g1 == g2

    def test_matrix_is_symmetric_with_self_ints_on_diagonal(self):
        g = corpus.get("D4").graph
        m = g.matrix()
        n = len(g.ids)
        assert all(m[i][j] == m[j][i] for i in range(n) for j in range(n))
        assert all(m[i][i] == g.vertices[i].self_int for i in range(n))


class TestValidation:
    @pytest.mark.parametrize("name", ["A1", "A5", "D4", "E8", "HJ(7,3)", "ex244min"])
    def test_corpus_graphs_are_valid(self, name):
        assert validate_graph(corpus.get(name).graph).ok

    def test_disconnected_graph_flagged(self):
        g = dual_graph("g", [("A", -2, 0), ("B", -2, 0)])
        report = validate_graph(g)
        assert not report.connected and not report.ok

    def test_non_negative_definite_flagged(self):
        # a (-1)-curve meeting two others with total multiplicity 2 is fine,
        # but a 0-curve is outside the lattice class entirely
        g = dual_graph("g", [("A", 0, -2)])
        report = validate_graph(g)
        assert not report.negative_definite and not report.ok

    def test_adjunction_violation_flagged(self):
        # self + kappa must be even and >= -2
        g = dual_graph("g", [("A", -2, 1)])
        report = validate_graph(g)
        assert not report.adjunction_ok and not report.ok

    def test_negative_definite_boundary(self):
        # the cycle graph of three (-2)-curves is negative semi-definite only
        g = dual_graph(
            "cycle3",
            [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
            [("A", "B"), ("B", "C"), ("A", "C")],
        )
        assert not is_negative_definite(g.matrix())

    def test_bareiss_determinant_matches_known_values(self):
        # det of the negated A_n matrix is n+1; of E8 it is 1
        for n in range(1, 8):
            m = [[-x for x in row] for row in corpus.get(f"A{n}").graph.matrix()]
            assert det_bareiss(m) == n + 1
        m = [[-x for x in row] for row in corpus.get("E8").graph.matrix()]
        assert det_bareiss(m) == 1


class TestCycles:
    def test_zero_coefficients_dropped(self):
        g = corpus.get("A2").graph
        z = cycle(g, {"E1": 0, "E2": 3})
        assert z.coeffs == (("E2", 3),)
        assert z.coeff("E1") == 0

    def test_unknown_vertex_rejected(self):
        g = corpus.get("A2").graph
        with pytest.raises(InputError):
            cycle(g, {"E9": 1})

    def test_fraction_coefficients(self):
        g = corpus.get("A2").graph
        z = cycle(g, {"E1": Fraction(1, 2)})
        assert not z.is_integral
        assert (2 * z).is_integral

    def test_dominates(self):
        g = corpus.get("A2").graph
        big = cycle(g, {"E1": 2, "E2": 1})
        small = cycle(g, {"E1": 1})
        assert big.dominates(small) and not small.dominates(big)

    def test_cross_graph_arithmetic_rejected(self):
        from antinef.errors import PreconditionError

        za = unit_cycle(corpus.get("A1").graph, "E1")
        zb = unit_cycle(corpus.get("A2").graph, "E1")
        with pytest.raises(PreconditionError):
            za + zb


_COEFFS = st.integers(min_value=-4, max_value=4)


@given(a=st.lists(_COEFFS, min_size=4, max_size=4), b=st.lists(_COEFFS, min_size=4, max_size=4))
def test_cycle_group_laws(a, b):
    g = corpus.get("D4").graph
    za = cycle(g, dict(zip(g.ids, a)))
    zb = cycle(g, dict(zip(g.ids, b)))
    assert za + zb == zb + za
    assert za - za == zero_cycle(g)
    assert -(za + zb) == (-za) + (-zb)
    assert 2 * za == za + za
