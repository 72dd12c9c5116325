import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import FIXTURES
from drsa import io
from drsa.cli import run_command
from drsa.errors import ParseError, ValidationError
from drsa.interval import IntervalTable
from drsa.pct import Alternatives
from drsa.rules import induce_rules
from drsa.table import DecisionTable


def fixture(name):
    return str(FIXTURES / f"{name}.json")


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestTableDocuments:
    @pytest.mark.parametrize("name", ["T1", "T2", "T3", "P1"])
    def test_round_trip(self, name):
        text = (FIXTURES / f"{name}.json").read_text()
        table = io.parse_table(text)
        again = io.parse_table(io.serialize_table(table))
        assert io.table_to_dict(again) == io.table_to_dict(table)
        assert io.serialize_table(again) == io.serialize_table(table)

    def test_kinds(self):
        assert isinstance(io.parse_table((FIXTURES / "T1.json").read_text()), DecisionTable)
        assert isinstance(io.parse_table((FIXTURES / "T3.json").read_text()), IntervalTable)
        assert isinstance(io.parse_table((FIXTURES / "P1.json").read_text()), Alternatives)

    def test_fixture_matches_constructor(self, t1):
        assert t1.row("o4") == (3, 2) and t1.class_of("o7") == 3

    def test_duplicate_attribute_names(self):
        doc = json.loads((FIXTURES / "T1.json").read_text())
        doc["attributes"][1]["name"] = "q1"
        with pytest.raises(ValidationError):
            io.parse_table(json.dumps(doc))

    def test_syntax_error_locus(self):
        with pytest.raises(ParseError) as exc:
            io.parse_table('{\n  "format": ,\n}')
        assert exc.value.locus.startswith("line 2")

    def test_field_error_locus(self):
        doc = json.loads((FIXTURES / "T1.json").read_text())
        doc["attributes"][0]["preference"] = "sideways"
        with pytest.raises(ParseError) as exc:
            io.parse_table(json.dumps(doc))
        assert exc.value.locus == "attributes[0].preference"

    def test_missing_value_record_parses(self, t2):
        assert t2.value("o8", "q1") == "?"

    def test_inactive_attribute_dropped(self):
        doc = json.loads((FIXTURES / "T1.json").read_text())
        doc["attributes"][1]["active"] = False
        assert io.parse_table(json.dumps(doc)).attribute_names == ("q1",)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([0.0, 0.3]))
    def test_random_round_trip(self, seed, missing):
        t = oracles.random_table(np.random.default_rng(seed), 10, 3, 3, missing=missing)
        assert io.parse_table(io.serialize_table(t)) == t


class TestFormatting:
    @pytest.mark.parametrize("value,text", [
        (Fraction(1, 3), "0.333333"),
        (Fraction(5, 7), "0.714286"),
        (Fraction(1, 2_000_000), "0.000000"),
        (Fraction(3, 2_000_000), "0.000002"),
        (Fraction(-1, 10**9), "0.000000"),
        (-2, "-2.000000"),
        (0.1, "0.100000"),
    ])
    def test_fmt(self, value, text):
        assert io.fmt(value) == text


class TestRuleDocuments:
    def test_render(self, t1):
        r = induce_rules(t1)[0]
        assert io.render_rule(r, t1.attributes) == "if f(y,q1) ≥ 2 ∧ f(y,q2) ≥ 2 then y ∈ Cl_2^≥"

    def test_text_round_trip(self, t1):
        for r in induce_rules(t1) + induce_rules(t1, certainty="possible"):
            back = io.parse_rule_text(io.render_rule(r, t1.attributes), t1.attributes)
            assert (back.conditions, back.conclusion, back.certainty) == (r.conditions, r.conclusion, r.certainty)

    def test_unparseable_text(self, t1):
        with pytest.raises(ParseError):
            io.parse_rule_text("if whatever then y ∈ Cl_2^≥", t1.attributes)

    def test_document_round_trip(self, t1):
        found = induce_rules(t1, None, 0.25)
        text = io.serialize_rules(found, t1)
        rules, attrs, classes = io.parse_rules(text)
        # statistics travel as 6-decimal strings, so compare the logic exactly and the document bytewise
        assert [(r.conditions, r.conclusion, r.certainty, r.support) for r in rules] == \
            [(r.conditions, r.conclusion, r.certainty, r.support) for r in found]
        assert tuple(attrs) == t1.attributes and tuple(classes) == t1.labels
        table = DecisionTable(attrs, t1.objects, t1.rows(), t1.decisions(), class_order=classes)
        assert io.serialize_rules(rules, table) == text

    def test_document_bad_class(self, t1):
        doc = io.rules_to_dict(induce_rules(t1), t1)
        doc["rules"][0]["conclusion"] = "9:up"
        with pytest.raises(ParseError) as exc:
            io.parse_rules(json.dumps(doc))
        assert exc.value.locus == "rules[0]"


class TestCli:
    def test_approx(self, capsys):
        code, out, err = run(capsys, "approx", "--table", fixture("T1"), "--union", "3:up",
                             "--theta", "0", "--measure", "epsilon")
        assert code == 0 and err == ""
        u = json.loads(out)["unions"][0]
        assert u["lower"] == ["o5", "o6"]
        assert u["upper"] == ["o4", "o5", "o6", "o7"]

    def test_rank(self, capsys):
        code, out, _ = run(capsys, "rank", "--table", fixture("P1"), "--variant", "enc", "--theta", "0",
                           "--judgments", fixture("J"))
        doc = json.loads(out)
        assert code == 0
        assert doc["scores"] == {"a": "2.000000", "b": "0.000000", "c": "-2.000000"}
        assert doc["ranking"] == [["a"], ["b"], ["c"]]

    def test_no_arguments(self, capsys):
        code, out, err = run(capsys)
        assert code == 2 and out == "" and "usage" in err

    def test_unknown_flag(self, capsys):
        code, out, err = run(capsys, "approx", "--table", fixture("T1"), "--bogus")
        assert code == 2 and out == "" and err

    def test_missing_values_deferred_to_command(self, capsys):
        code, out, err = run(capsys, "approx", "--table", fixture("T2"))
        assert code == 1 and out == "" and "error" in err
        code, out, _ = run(capsys, "approx", "--table", fixture("T2"), "--mv", "1.5")
        assert code == 0 and json.loads(out)["mv"] == "1.5"

    def test_missing_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "quality", "--table", str(tmp_path / "absent.json"))
        assert code == 1 and out == "" and err

    def test_out_flag(self, capsys, tmp_path):
        target = tmp_path / "q.json"
        code, out, _ = run(capsys, "quality", "--table", fixture("T1"), "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["quality"] == "0.714286"

    def test_rules_then_classify(self, capsys, tmp_path):
        rules_path = tmp_path / "rules.json"
        assert run(capsys, "rules", "--table", fixture("T1"), "--out", str(rules_path))[0] == 0
        code, out, _ = run(capsys, "classify", "--table", fixture("T1"), "--rules", str(rules_path))
        assert code == 0
        assert json.loads(out)["command"] == "classify"

    def test_transform_emits_table(self, capsys):
        code, out, _ = run(capsys, "transform", "--table", fixture("T1"))
        assert code == 0
        assert io.parse_table(out) == io.parse_table((FIXTURES / "T1.json").read_text())

    def test_deterministic(self, capsys):
        argv = ["rules", "--table", fixture("T1"), "--theta", "0.25"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
