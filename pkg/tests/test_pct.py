from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from drsa import pct
from drsa.errors import DomainError, ValidationError
from drsa.pct import S, SC
from drsa.rules import rule_consistency
from drsa.table import Attribute, Kind

J = [("a", "b", "S"), ("b", "a", "Sc")]


def rows(table):
    return {r.pair: (r.delta, r.label) for r in table.rows}


def shape(rules):
    return [(pct.rule_conclusion_label(r), [(c.attribute, c.relation.value, c.value) for c in r.conditions])
            for r in rules]


def random_alternatives(seed, size=5, criteria=2):
    rng = np.random.default_rng(seed)
    crit = [Attribute(f"g{j}", "cost" if rng.random() < 0.3 else "gain") for j in range(criteria)]
    evals = {f"m{i}": tuple(int(v) for v in rng.integers(0, 6, size=criteria)) for i in range(size)}
    return pct.Alternatives(crit, evals)


class TestBuildPct:
    def test_not_consistent_variant(self, p1):
        table = pct.build_pct(p1, J, "enc")
        assert rows(table) == {
            ("a", "b"): ((2, 1), S),
            ("b", "a"): ((-2, -1), SC),
            ("a", "a"): ((0, 0), S),
            ("b", "b"): ((0, 0), S),
            ("c", "c"): ((0, 0), S),
        }

    def test_consistent_variant_without_judgments(self, p1):
        table = pct.build_pct(p1, [], "ec")
        assert set(table.pairs) == {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c"), ("b", "c")}
        assert table.labelled(SC) == frozenset()

    def test_conflicting_labels(self, p1):
        with pytest.raises(DomainError):
            pct.build_pct(p1, [("a", "b", "S"), ("a", "b", "Sc")])

    def test_enrichment_conflict(self, p1):
        with pytest.raises(DomainError):
            pct.build_pct(p1, [("a", "b", "Sc")], "ec")

    def test_unknown_object(self, p1):
        with pytest.raises(DomainError):
            pct.build_pct(p1, [("a", "z", "S")])

    def test_bad_label(self, p1):
        with pytest.raises(DomainError):
            pct.build_pct(p1, [("a", "b", "maybe")])

    def test_duplicates_collapse(self, p1):
        table = pct.build_pct(p1, J + [("a", "b", "S")])
        assert len(table.rows) == 5

    def test_mapping_judgments(self, p1):
        assert pct.build_pct(p1, {("a", "b"): "S", ("b", "a"): "Sc"}) == pct.build_pct(p1, J)

    def test_cost_delta_is_flipped(self):
        alts = pct.Alternatives([Attribute("price", Kind.COST)], {"x": (10,), "y": (30,)})
        assert alts.delta("x", "y") == (20,)
        assert alts.dominates("x", "y") and not alts.dominates("y", "x")

    def test_non_cardinal_rejected(self):
        with pytest.raises(ValidationError):
            pct.Alternatives([Attribute("r")], {"x": (1,)})
        with pytest.raises(ValidationError):
            pct.Alternatives([Attribute("g", Kind.GAIN)], {"x": ("?",)})


class TestApproximation:
    def test_p1(self, p1):
        lower_s, lower_sc = pct.approximate_outranking(pct.build_pct(p1, J), 0)
        assert lower_s == {("a", "b"), ("a", "a"), ("b", "b"), ("c", "c")}
        assert lower_sc == {("b", "a")}

    def test_saturated_threshold(self, p1):
        alts = random_alternatives(4)
        judg = [("m0", "m1", "S"), ("m1", "m0", "S"), ("m2", "m3", "Sc"), ("m3", "m4", "Sc")]
        table = pct.build_pct(alts, judg)
        assert pct.approximate_outranking(table, 1) == (table.labelled(S), table.labelled(SC))

    def test_empty_complement(self):
        alts = pct.Alternatives([Attribute("g", Kind.GAIN)], {"x": (1,)})
        table = pct.build_pct(alts, [])
        assert pct.approximate_outranking(table, 0) == ({("x", "x")}, frozenset())

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_pair_dominance_is_preorder(self, seed):
        alts = random_alternatives(seed)
        objs = alts.objects
        judg = [(a, b, "S" if alts.delta(a, b)[0] > 0 else "Sc") for a in objs for b in objs if a != b]
        table = pct.build_pct(alts, judg)
        for p in table.pairs:
            assert p in pct.pair_cone(table, p)
            for q in pct.pair_cone(table, p):
                assert p in pct.pair_cone(table, q, dominating=False)
                for r in pct.pair_cone(table, q):
                    assert r in pct.pair_cone(table, p)


class TestRules:
    def test_p1_rules(self, p1):
        found = pct.induce_pct_rules(pct.build_pct(p1, J), 0)
        assert shape(found) == [(S, [("Δg1", ">=", 0)]), (SC, [("Δg1", "<=", -2)])]

    def test_empty_lower(self):
        alts = pct.Alternatives([Attribute("g", Kind.GAIN)], {"x": (1,), "y": (1,)})
        table = pct.build_pct(alts, [("x", "y", "Sc")])
        # (x,y) and the reflexive pairs share Δ = 0, so neither label has a consistent row
        assert pct.approximate_outranking(table, 0) == (frozenset(), frozenset())
        assert pct.induce_pct_rules(table, 0) == []

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([Fraction(0), Fraction(1, 4)]))
    def test_rules_respect_threshold(self, seed, theta):
        alts = random_alternatives(seed)
        objs = alts.objects
        judg = [(a, b, "S" if sum(alts.delta(a, b)) >= 0 else "Sc") for a in objs for b in objs if a != b]
        table = pct.build_pct(alts, judg)
        dt = table.as_decision_table()
        found = pct.induce_pct_rules(table, theta)
        lower_s, lower_sc = pct.approximate_outranking(table, theta)
        for r in found:
            assert rule_consistency(r, dt) <= theta
        covered_s = {p for p in dt.objects for r in found if r.conclusion.upward and oracles.covers(r, dt, p)}
        covered_sc = {p for p in dt.objects for r in found if not r.conclusion.upward and oracles.covers(r, dt, p)}
        assert lower_s <= covered_s and lower_sc <= covered_sc


class TestApplyRules:
    def test_p1_crisp(self, p1):
        table, found, structure, _, _ = pct.rank(p1, J, "enc", 0)
        assert {p for p in structure.pairs() if structure.s(*p)} == {("a", "b"), ("a", "c"), ("b", "c")}
        # Δg1 <= -2 also holds for (c,a) and (c,b)
        assert {p for p in structure.pairs() if structure.sc(*p)} == {("b", "a"), ("c", "a"), ("c", "b")}

    def test_no_rules(self, p1):
        structure = pct.apply_rules([], p1)
        assert all(structure.s(*p) == 0 and structure.sc(*p) == 0 for p in structure.pairs())

    def test_valued_equals_crisp_for_pure_rules(self, p1):
        found = pct.induce_pct_rules(pct.build_pct(p1, J), 0)
        crisp = pct.apply_rules(found, p1, mode="crisp")
        valued = pct.apply_rules(found, p1, mode="valued")
        assert crisp.outranking == valued.outranking
        assert crisp.non_outranking == valued.non_outranking

    def test_valued_uses_strength(self, p1):
        found = pct.induce_pct_rules(pct.build_pct(p1, J), 0)
        weak = [r.__class__(r.conditions, r.conclusion, r.certainty, r.support, r.coverage, Fraction(1, 4))
                for r in found]
        valued = pct.apply_rules(weak, p1, mode="valued")
        assert valued.s("a", "b") == Fraction(3, 4)

    def test_consistent_variant_forces_dominance(self, p1):
        structure = pct.apply_rules([], p1, variant="ec")
        assert structure.s("a", "b") == structure.s("a", "c") == structure.s("b", "c") == 1
        assert structure.s("b", "a") == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_consistent_enrichment_invariant(self, seed):
        alts = random_alternatives(seed)
        objs = alts.objects
        judg = [(objs[0], objs[1], "Sc")] if not alts.dominates(objs[0], objs[1]) else []
        _, _, structure, _, _ = pct.rank(alts, judg, "ec", 0)
        for a, b in structure.pairs():
            if alts.dominates(a, b):
                assert structure.s(a, b) == 1

    def test_subset_of_objects(self, p1):
        structure = pct.apply_rules([], p1, objects=["a", "c"])
        assert structure.pairs() == [("a", "c"), ("c", "a")]
        with pytest.raises(DomainError):
            pct.apply_rules([], p1, objects=["a", "z"])


class TestRelationAndNetFlow:
    def test_relation_values(self):
        st_ = pct.crisp_structure("ab", [("a", "b")], [("b", "a")])
        r = pct.relation_r(st_)
        assert r[("a", "b")] == 1
        assert r[("b", "a")] == 0

    def test_unknown_pair(self):
        assert pct.relation_r(pct.crisp_structure("ab", []))[("a", "b")] == Fraction(1, 2)

    def test_p1_pipeline(self, p1):
        _, _, _, relation, ranking = pct.rank(p1, J, "enc", 0)
        assert ranking.scores == {"a": 2, "b": 0, "c": -2}
        assert ranking.order == (("a",), ("b",), ("c",))
        assert ranking.rank_of("c") == 3

    def test_constant_relation(self):
        objs = ["x", "y", "z"]
        rel = {(a, b): Fraction(1, 3) for a in objs for b in objs if a != b}
        ranking = pct.net_flow_rule(rel, objs)
        assert set(ranking.scores.values()) == {0}
        assert ranking.order == (("x", "y", "z"),)

    def test_single_object(self):
        ranking = pct.net_flow_rule({}, ["x"])
        assert ranking.scores == {"x": 0} and ranking.order == (("x",),)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.fractions(-3, 3))
    def test_zero_sum_and_shift_invariance(self, seed, size, shift):
        objs, rel = oracles.random_valued_relation(np.random.default_rng(seed), size)
        ranking = pct.net_flow_rule(rel, objs)
        assert sum(ranking.scores.values()) == 0
        assert ranking.scores == oracles.net_flow(rel, objs)
        shifted = pct.net_flow_rule({p: v + shift for p, v in rel.items()}, objs)
        assert shifted.order == ranking.order

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_relation_in_unit_interval(self, seed):
        rng = np.random.default_rng(seed)
        objs = ["a", "b", "c"]
        structure = pct.PreferenceStructure(tuple(objs), mode="valued")
        for p in structure.pairs():
            structure.outranking[p] = Fraction(int(rng.integers(0, 11)), 10)
            structure.non_outranking[p] = Fraction(int(rng.integers(0, 11)), 10)
        assert all(0 <= v <= 1 for v in pct.relation_r(structure).values())


class TestAlphaScore:
    def test_counts(self):
        structure = pct.crisp_structure("abc", [("a", "b"), ("a", "c"), ("b", "c")], [("c", "b")])
        assert pct.net_flow_score_alpha(structure) == {"a": 2, "b": 1, "c": -3}

    def test_empty(self):
        assert pct.net_flow_score_alpha(pct.crisp_structure("abc", [])) == {"a": 0, "b": 0, "c": 0}

    def test_single_edge(self):
        assert pct.net_flow_score_alpha(pct.crisp_structure("ab", [("a", "b")])) == {"a": 1, "b": -1}

    def test_valued_rejected(self):
        structure = pct.PreferenceStructure(("a", "b"), {("a", "b"): Fraction(1, 2)}, {}, "valued")
        with pytest.raises(DomainError):
            pct.net_flow_score_alpha(structure)
