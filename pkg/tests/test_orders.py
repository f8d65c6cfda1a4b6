import itertools

import pytest

from borel_rees.borel import borel_closure, order_view
from borel_rees.monomial import parse_monomial, rlex_sort_key
from borel_rees.orders import (
    OrderDomainError,
    PresOrder,
    build_G1,
    build_G2,
    build_G3,
    build_fiber_type_basis,
    build_syzygy_set,
    dump_basis,
    region_minima,
    sink_violations_ht,
    sink_violations_mrlex,
    sink_violations_rlex,
    standard_factorization,
)
from borel_rees.presentation import PresMonomial, PresVar, content, phi


def m(text, n):
    return parse_monomial(text, n)


def pres(n, *specs):
    return PresMonomial([PresVar(i, m(t, n)) for i, t in specs])


RLEX_CHAIN = ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2",
              "x1*x4", "x2*x4", "x1*x5", "x2*x5"]
MRLEX_CHAIN = ["x1*x4", "x2*x4", "x1*x5", "x2*x5",
               "x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]


class TestVariableOrders:
    def test_rlex_chain(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        assert [str(p.generator) for p in order.ranked] == RLEX_CHAIN

    def test_mrlex_chain(self, quadric_pair_ideal):
        order = PresOrder.mrlex(order_view(quadric_pair_ideal))
        assert [str(p.generator) for p in order.ranked] == MRLEX_CHAIN

    def test_mrlex_literal_clause_degenerates_to_rlex(self, quadric_pair_ideal):
        order = PresOrder.mrlex(
            order_view(quadric_pair_ideal), literal_clause=True
        )
        assert [str(p.generator) for p in order.ranked] == RLEX_CHAIN

    def test_head_and_tail_blocks(self, running_pair):
        i1, i2 = running_pair
        order = PresOrder.head_and_tail(order_view(i1), order_view(i2))
        assert order.compare_presvars(
            PresVar(1, m("x2*x6", 6)), PresVar(2, m("x1*x4", 6))
        ) == 1
        # within the first block: rlex; within the second: mrlex
        assert order.compare_presvars(
            PresVar(1, m("x1^2", 6)), PresVar(1, m("x4*x5", 6))
        ) == 1
        assert order.compare_presvars(
            PresVar(2, m("x3*x6", 6)), PresVar(2, m("x1^2", 6))
        ) == 1

    def test_outside_context_rejected(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        with pytest.raises(OrderDomainError):
            order.compare_presvars(
                PresVar(1, m("x4*x5", 5)), PresVar(1, m("x3^2", 5))
            )


class TestMonomialComparison:
    def test_trail_with_smaller_last_factor_loses(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        A = pres(5, (1, "x2*x3"), (1, "x1*x4"))
        B = pres(5, (1, "x1*x3"), (1, "x2*x4"))
        assert order.compare_presmonomials(A, B) == 1
        assert order.compare_presmonomials(B, A) == -1

    def test_equal(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        A = pres(5, (1, "x2*x3"), (1, "x1*x4"))
        assert order.compare_presmonomials(A, A) == 0

    def test_head_and_tail_cross_comparison(self, running_pair):
        i1, i2 = running_pair
        order = PresOrder.head_and_tail(order_view(i1), order_view(i2))
        lead = pres(6, (1, "x4^2"), (2, "x3*x5"))
        trail = pres(6, (1, "x3*x5"), (2, "x4^2"))
        assert order.compare_presmonomials(lead, trail) == 1

    def test_graded_before_revlex(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        assert order.compare_presmonomials(
            pres(5, (1, "x3^2"), (1, "x3^2")), pres(5, (1, "x1^2"))
        ) == 1


def _global_min_avoided(rule, key):
    """Independent marking oracle: the lead is the factorization avoiding the
    overall smallest factor."""
    factors = list(rule.lead.factors) + list(rule.trail.factors)
    smallest = max(factors, key=key)  # largest sort key = smallest in order
    return smallest in rule.trail.factors and smallest not in rule.lead.factors


class TestG1:
    def test_single_variable_principal_is_empty(self):
        assert build_G1(borel_closure([m("x1^2", 1)], 1)) == []

    def test_three_generator_square(self):
        rules = build_G1(borel_closure([m("x2^2", 3)], 3))
        assert [r.label(r=1) for r in rules] == ["T12^2 -> T11*T22"]

    def test_contains_reference_binomial(self, quadric_pair_G1):
        labels = {r.label(r=1) for r in quadric_pair_G1}
        assert "T23*T14 -> T13*T24" in labels

    def test_marking_matches_smallest_factor_oracle(self, quadric_pair_G1):
        for rule in quadric_pair_G1:
            assert _global_min_avoided(
                rule, lambda f: rlex_sort_key(f.generator)
            ), rule.label(r=1)

    def test_all_products_coincide(self, quadric_pair_ideal, quadric_pair_G1):
        for rule in quadric_pair_G1:
            assert content(rule.lead, 5) == content(rule.trail, 5)
            assert rule.lead != rule.trail

    def test_lead_exceeds_trail_in_induced_order(
        self, quadric_pair_ideal, quadric_pair_G1
    ):
        order = PresOrder.rlex(quadric_pair_ideal)
        for rule in quadric_pair_G1:
            assert order.compare_presmonomials(rule.lead, rule.trail) == 1

    def test_exhaustive_over_products(self, quadric_pair_ideal):
        # every unordered pair of distinct two-factor factorizations appears
        gens = quadric_pair_ideal.minimal_generators
        by_product = {}
        for a, b in itertools.combinations_with_replacement(gens, 2):
            by_product.setdefault((a * b).exps, []).append((a, b))
        expected = sum(
            len(v) * (len(v) - 1) // 2 for v in by_product.values()
        )
        assert len(build_G1(quadric_pair_ideal)) == expected == 13


class TestG2:
    def test_single_generator_degenerate_case(self):
        assert build_G2(order_view(borel_closure([m("x1^2", 1)], 1))) == []

    def test_principal_ideal_G2_equals_G1(self):
        ideal = borel_closure([m("x2*x3", 4)], 4)
        g1 = build_G1(ideal)
        g2 = build_G2(order_view(ideal))
        assert {(r.lead, r.trail) for r in g1} == {
            (r.lead, r.trail) for r in g2
        }

    def test_mrlex_marking(self, running_pair):
        _, i2 = running_pair
        view = order_view(i2)
        rules = build_G2(view, 2)
        order = PresOrder.mrlex(view, 2)
        for rule in rules:
            assert order.compare_presmonomials(rule.lead, rule.trail) == 1

    def test_coincident_products_respect_generator_set(self, running_pair):
        # x3*x4^2*x5 factors twice over the first ideal's generators but only
        # once over the second's (x4*x5 is not a generator there), so the
        # binomial lives in G1 of the first ideal and nowhere in G2 of the
        # second
        i1, i2 = running_pair
        target = m("x3*x4^2*x5", 6)
        g1_hits = [
            r for r in build_G1(i1) if content(r.lead, 6) == target
        ]
        assert [r.label(r=1) for r in g1_hits] == ["T44*T35 -> T34*T45"]
        g2_hits = [
            r
            for r in build_G2(order_view(i2), 2)
            if content(r.lead, 6) == target
        ]
        assert g2_hits == []

    def test_region_crossing_pairs_marked_by_block(self, quadric_pair_ideal):
        view = order_view(quadric_pair_ideal)
        rules = build_G2(view)
        # product x1*x2*x3*x4 factors as {x2x3, x1x4} and {x1x3, x2x4}; under
        # the mixed order the B_N factors dominate, so the pair whose smallest
        # factor lies in B_M leads
        match = [
            r for r in rules
            if content(r.lead, 5) == m("x1*x2*x3*x4", 5)
        ]
        assert len(match) == 1
        assert match[0].label(r=1) == "T13*T24 -> T23*T14"


class TestG3:
    def test_reference_rules(self, running_pair):
        i1, i2 = running_pair
        rules = build_G3(order_view(i1), order_view(i2))
        labels = {r.label(r=2) for r in rules}
        assert "T44*Z35 -> T35*Z44" in labels
        assert "T26*Z35 -> T25*Z36" in labels

    def test_no_coincident_cross_products_gives_empty_set(self):
        # with a single first-ideal generator every cross product has one
        # factorization, so no binomials arise
        i1 = borel_closure([m("x1^2", 4)], 4)
        i2 = borel_closure([m("x2^2", 4)], 4)
        assert build_G3(order_view(i1), order_view(i2)) == []

    def test_swap_rules_when_generators_shared(self, running_pair):
        i1, i2 = running_pair
        rules = build_G3(order_view(i1), order_view(i2))
        labels = {r.label(r=2) for r in rules}
        assert "T34*Z26 -> T26*Z34" in labels

    def test_marking_is_second_ideal_mrlex(self, running_pair):
        i1, i2 = running_pair
        view2 = order_view(i2)
        order2 = PresOrder.mrlex(view2, 2)
        for rule in build_G3(order_view(i1), view2):
            v_lead = [f for f in rule.lead.factors if f.ideal_index == 2][0]
            v_trail = [f for f in rule.trail.factors if f.ideal_index == 2][0]
            assert order2.compare_presvars(v_lead, v_trail) == 1


class TestSyzygies:
    def test_reference_syzygy(self):
        ideal = borel_closure([m("x3^2", 3)], 3)
        labels = {r.label() for r in build_syzygy_set([ideal])}
        assert "x1*T23 -> x2*T13" in labels

    def test_single_variable_principal_empty(self):
        assert build_syzygy_set([borel_closure([m("x1^3", 1)], 1)]) == []

    def test_count_matches_reduction_arrows(self, quadric_pair_ideal):
        syz = build_syzygy_set([quadric_pair_ideal])
        assert len(syz) == 25

    def test_lead_image_equals_trail_image(self, quadric_pair_ideal):
        for rule in build_syzygy_set([quadric_pair_ideal]):
            assert phi(rule.lead, [quadric_pair_ideal]) == phi(
                rule.trail, [quadric_pair_ideal]
            )

    def test_lead_variable_is_earlier(self, quadric_pair_ideal):
        for rule in build_syzygy_set([quadric_pair_ideal]):
            i = rule.lead.x_part.support()[0]
            j = rule.trail.x_part.support()[0]
            assert i < j


class TestFiberTypeBasis:
    def test_disjoint_union_size(self, quadric_pair_ideal, quadric_pair_G1):
        combined = build_fiber_type_basis(
            [quadric_pair_ideal], quadric_pair_G1
        )
        assert len(combined) == 25 + len(quadric_pair_G1)

    def test_empty_fiber_gb(self):
        ideal = borel_closure([m("x1^2", 1)], 1)
        assert build_fiber_type_basis([ideal], []) == []

    def test_running_pair_union(self, running_pair, running_pair_basis):
        combined = build_fiber_type_basis(
            list(running_pair), running_pair_basis
        )
        sources = {r.source for r in combined}
        assert sources == {"SYZ", "G1", "G2", "G3"}


class TestStandardFactorization:
    def test_sink_factorization(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        T = pres(5, (1, "x1^2"), (1, "x3^2"), (1, "x2*x4"), (1, "x2*x5"))
        sf = standard_factorization(T, order)
        assert str(sf.L_M.generator) == "x3^2"
        assert str(sf.L_N.generator) == "x2*x5"

    def test_region_minima(self, quadric_pair_ideal):
        view = order_view(quadric_pair_ideal)
        M_prime, N_prime = region_minima(
            m("x1^2*x2^2*x3^2*x4*x5", 5), view
        )
        assert str(M_prime) == "x3^2" and str(N_prime) == "x2*x5"

    def test_mixed_order_blocks_tail_first(self, quadric_pair_ideal):
        view = order_view(quadric_pair_ideal)
        order = PresOrder.mrlex(view)
        T = pres(5, (1, "x3^2"), (1, "x1*x4"), (1, "x2*x5"))
        sf = standard_factorization(T, order)
        assert [str(f.generator) for f in sf.factors] == [
            "x1*x4", "x2*x5", "x3^2"
        ]
        assert str(sf.L_N.generator) == "x2*x5"
        assert str(sf.L_M.generator) == "x3^2"

    def test_absent_regions(self, quadric_pair_ideal):
        order = PresOrder.rlex(quadric_pair_ideal)
        T = pres(5, (1, "x1*x4"), (1, "x2*x5"))
        sf = standard_factorization(T, order)
        assert sf.L_M is None
        assert str(sf.L_N.generator) == "x2*x5"
        _, N_prime = region_minima(m("x4*x5", 5), order.views[-1])
        assert N_prime is None  # no single B_N generator divides x4*x5


class TestSinkViolationCheckers:
    """The index-inequality checkers must actually flag bad factorizations,
    not just stay silent on real sinks."""

    def test_rlex_checker_flags_non_sink(self, quadric_pair_ideal):
        view = order_view(quadric_pair_ideal)
        # in sorted order x2^2 precedes x1*x3 with a decreasing head index,
        # which no true sink exhibits (the pair rewrites via x1*x2, x2*x3)
        bad = pres(5, (1, "x2^2"), (1, "x1*x3"))
        assert sink_violations_rlex(bad, view) == [
            "T22,T13: same-region monotone"
        ]
        good = pres(5, (1, "x1^2"), (1, "x3^2"), (1, "x2*x4"), (1, "x2*x5"))
        assert not sink_violations_rlex(good, view)

    def test_rlex_cross_region_head_rule(self, quadric_pair_ideal):
        view = order_view(quadric_pair_ideal)
        # B_M factor x3^2 followed by B_N factor x1*x4: head index 3 exceeds
        # 1 and also exceeds c = 2, so the pair is clean; x2*x3 against
        # x1*x4 has head 2 <= c with equal-head/tail clause violated
        assert not sink_violations_rlex(pres(5, (1, "x3^2"), (1, "x1*x4")),
                                        view)
        assert sink_violations_rlex(pres(5, (1, "x2*x3"), (1, "x1*x5")), view)

    def test_mrlex_checker_flags_cross_region_inversion(self, running_pair):
        _, i2 = running_pair
        view = order_view(i2)
        # B_N factor x3*x5 before B_M factor x1^2 needs head 3 <= 1: violated
        bad = pres(6, (2, "x3*x5"), (2, "x1^2"))
        assert sink_violations_mrlex(bad, view)
        good = pres(6, (2, "x1*x5"), (2, "x4^2"))
        assert not sink_violations_mrlex(good, view)

    def test_ht_checker_flags_broken_tail_chain(self, running_pair):
        i1, i2 = running_pair
        view1, view2 = order_view(i1), order_view(i2)
        # two tail-region factors with decreasing heads break the chain
        bad = pres(6, (1, "x4^2"), (2, "x3*x5"), (2, "x1*x6"))
        assert sink_violations_ht(bad, view1, view2)
        good = pres(6, (1, "x4^2"), (2, "x2*x5"), (2, "x3*x5"))
        assert not sink_violations_ht(good, view1, view2)


class TestDump:
    def test_jsonl_shape(self, quadric_pair_G1):
        text = dump_basis(quadric_pair_G1, r=1)
        lines = [line for line in text.splitlines() if line]
        assert len(lines) == len(quadric_pair_G1)
        import json

        row = json.loads(lines[0])
        assert set(row) == {"lead", "trail", "source"}
        assert row["source"] == "G1"
