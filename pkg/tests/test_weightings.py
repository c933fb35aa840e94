from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drtaut.exact import RPoly
from drtaut.graphs import StableGraph, enumerate_stable_graphs, first_betti
from drtaut.weightings import (
    DRVector,
    SWEEP,
    SampleSpec,
    certified_fit,
    edge_profile_sums,
    enumerate_weightings,
    fit_edge_profiles,
    fit_r_polynomial,
    lattice_sum,
)

F = Fraction

LOOP_G1 = StableGraph([1], [(0, 0)])
TWO_LOOPS = StableGraph([0], [(0, 0), (0, 0)])
BANANA2_G1G1 = StableGraph([1, 1], [(0, 1), (0, 1)])
BANANA3_G0G1 = StableGraph([0, 1], [(0, 1), (0, 1), (0, 1)])


def brute_weightings(graph, r, dr):
    """Filter every per-edge assignment by all vertex congruences."""
    n_e = graph.n_edges
    legs = [a % r for a in dr.parts]
    found = set()
    for assign in itertools.product(range(r), repeat=n_e):
        values = [0] * graph.n_half_edges
        for t, w in enumerate(assign):
            values[2 * t] = w
            values[2 * t + 1] = (r - w) % r
        for i, a in enumerate(legs):
            values[2 * n_e + i] = a
        ok = True
        for v in range(graph.n_vertices):
            total = sum(
                values[h]
                for h in range(graph.n_half_edges)
                if graph.half_edge_vertex(h) == v
            )
            target = dr.twist * (2 * graph.genera[v] - 2 + graph.vertex_degree(v))
            if (total - target) % r != 0:
                ok = False
                break
        if ok:
            found.add(tuple(values))
    return found


class TestDRVector:
    def test_accessors(self):
        dr = DRVector(1, (3, -1, -2))
        assert dr.n == 3
        assert dr.is_exact
        assert dr.mu == (3,)
        assert dr.nu == (2, 1)
        assert dr.degree == 3

    def test_twisted_defect(self):
        dr = DRVector(1, (1,), twist=1)
        # k (2g - 2 + n) = 1, parts sum to 1: balanced.
        assert dr.is_exact
        off = DRVector(1, (2,), twist=1)
        assert off.defect == -1
        with pytest.raises(ValueError):
            off.require_exact()


class TestEnumerate:
    def test_cardinality_is_r_to_betti(self):
        dr0 = DRVector(2, ())
        for graph in enumerate_stable_graphs(2, 0):
            for r in (1, 2, 3, 5):
                ws = enumerate_weightings(graph, r, dr0)
                assert len(ws) == r ** first_betti(graph)

    def test_congruence_failure_gives_none(self):
        # sum a_i = 1 not divisible by r = 3 (k = 0).
        graph = StableGraph([1], [], [0])
        dr = DRVector(1, (1,))
        assert enumerate_weightings(graph, 3, dr) == ()
        assert len(enumerate_weightings(graph, 2, DRVector(1, (2,)))) == 1

    def test_vertex_and_edge_congruences_hold(self):
        dr = DRVector(2, (3, -1), twist=1)  # k(2g-2+n) = 4 > 2 = sum: mod-2 ok
        graph = StableGraph([1, 1], [(0, 1), (0, 1)], [0, 1])
        for r in (2,):
            for wt in enumerate_weightings(graph, r, dr):
                for t in range(graph.n_edges):
                    h1, h2 = graph.edge_half_edges(t)
                    assert (wt(h1) + wt(h2)) % r == 0
                for i, a in enumerate(dr.parts):
                    assert wt(graph.leg_half_edge(i + 1)) == a % r
                for v in range(graph.n_vertices):
                    total = sum(
                        wt(h)
                        for h in range(graph.n_half_edges)
                        if graph.half_edge_vertex(h) == v
                    )
                    target = dr.twist * (2 * graph.genera[v] - 2 + graph.vertex_degree(v))
                    assert (total - target) % r == 0

    def test_matches_brute_force(self):
        cases = [
            (LOOP_G1, DRVector(2, ()), 4),
            (TWO_LOOPS, DRVector(2, ()), 3),
            (BANANA2_G1G1, DRVector(3, ()), 4),
            (BANANA3_G0G1, DRVector(3, ()), 3),
            (StableGraph([0, 1], [(0, 1)], [0, 0]), DRVector(1, (2, -2)), 5),
            (StableGraph([1, 0], [(0, 1), (1, 1)], [1]), DRVector(2, (1,), twist=1), 3),
        ]
        for graph, dr, r in cases:
            ours = {wt.values for wt in enumerate_weightings(graph, r, dr)}
            assert ours == brute_weightings(graph, r, dr)

    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_matches_brute_force_random(self, data):
        pool = [g for g in enumerate_stable_graphs(2, 1) if g.n_edges <= 3]
        graph = data.draw(st.sampled_from(pool))
        r = data.draw(st.integers(min_value=1, max_value=4))
        a1 = data.draw(st.integers(min_value=-3, max_value=3))
        k = data.draw(st.integers(min_value=0, max_value=2))
        dr = DRVector(2, (a1,), twist=k)
        ours = {wt.values for wt in enumerate_weightings(graph, r, dr)}
        assert ours == brute_weightings(graph, r, dr)


class TestLatticeSums:
    def test_loop_moment(self):
        dr = DRVector(2, ())
        for r in (2, 3, 7):
            val = lattice_sum(LOOP_G1, r, dr, {(1, 1): F(1)})
            assert val == F(r * (r * r - 1), 6)

    def test_profile_sums_match_lattice(self):
        dr = DRVector(3, ())
        for graph in [BANANA2_G1G1, BANANA3_G0G1, TWO_LOOPS]:
            profiles = [
                tuple(p) for p in itertools.product((1, 2), repeat=graph.n_edges)
            ]
            for r in (2, 5):
                sums = edge_profile_sums(graph, r, dr, profiles)
                for prof, val in zip(profiles, sums):
                    exps = [0] * graph.n_half_edges
                    for t, p in enumerate(prof):
                        exps[2 * t] = p
                        exps[2 * t + 1] = p
                    assert F(val) == lattice_sum(graph, r, dr, {tuple(exps): F(1)})

    def test_profile_sums_congruence_failure(self):
        graph = StableGraph([1], [(0, 0)], [0])
        dr = DRVector(2, (1,))
        assert edge_profile_sums(graph, 5, dr, [(1,)]) == [0]


class TestFitting:
    def test_loop_fit(self):
        poly, divisible = fit_r_polynomial(LOOP_G1, DRVector(2, ()), {(1, 1): F(1)})
        assert poly == RPoly([F(0), F(-1, 6), F(0), F(1, 6)])
        assert divisible
        assert poly.shift_down(1).constant_term == F(-1, 6)

    def test_two_loop_fit(self):
        [(poly, divisible)] = fit_edge_profiles(TWO_LOOPS, DRVector(2, ()), [(1, 1)])
        assert divisible
        assert poly.shift_down(2).constant_term == F(1, 36)

    def test_quartic_loop_moment(self):
        [(poly, divisible)] = fit_edge_profiles(LOOP_G1, DRVector(2, ()), [(2,)])
        assert divisible
        # sum_w (w(r-w))^2 = r^5/30 - r^3/6*... : its r-linear part is B_4.
        assert poly.shift_down(1).constant_term == F(-1, 30)

    def test_nonzero_parts_fit(self):
        graph = StableGraph([0, 1], [(0, 1)], [0, 0, 1])
        dr = DRVector(1, (2, 1, -3))
        poly, divisible = fit_r_polynomial(graph, dr, {(1, 1, 0, 0, 0): F(1)})
        # Bridge weight is the side sum 3, so x = 3 (r - 3) for large r.
        assert divisible  # betti 0: trivially divisible
        assert poly == RPoly([F(-9), F(3)])

    def test_insufficient_degree_bound(self):
        with pytest.raises(ValueError, match="insufficient degree bound"):
            certified_fit(
                lambda r: F(r) ** 9,
                degree_bound=1,
                r_min=2,
                label="deliberate underfit",
            )

    def test_retry_recovers_from_small_bound(self):
        # Degree 3 data with bound 1: the doubled window has 4 nodes and fits.
        poly, _ = certified_fit(
            lambda r: F(r) ** 3, degree_bound=1, r_min=2, label="retry case"
        )
        assert poly == RPoly([F(0), F(0), F(0), F(1)])

    def test_sweep_records(self):
        SWEEP.reset()
        fit_r_polynomial(LOOP_G1, DRVector(2, ()), {(1, 1): F(1)})
        assert SWEEP.total == 1
        assert SWEEP.failures() == []
        assert SWEEP.summary() == {"fits": 1, "failures": 0}
        SWEEP.reset()

    def test_explicit_sample_spec(self):
        spec = SampleSpec(r_min=11, degree_bound=4)
        poly, _ = fit_r_polynomial(LOOP_G1, DRVector(2, ()), {(1, 1): F(1)}, spec)
        assert poly == RPoly([F(0), F(-1, 6), F(0), F(1, 6)])
