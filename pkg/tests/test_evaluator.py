"""Evaluator semantics: path resolution, comparisons, laws, oracle agreement."""

import random
import re
from decimal import Decimal

from hypothesis import given, settings
from hypothesis import strategies as st

from generators import make_corpus, make_query
from oracle import oracle_eval
from refsearch.evaluator import (
    MISSING,
    compare,
    compile_query,
    eval_query,
    index_candidates,
    resolve_path,
)
from refsearch.querylang import parse_query
from refsearch.querylang.ast import And, Cmp, ComparisonOp, FieldPath, Num, Or, Regex, Str


def path(dotted):
    return FieldPath(tuple(dotted.split(".")))


def num(lexeme):
    return Num(Decimal(lexeme), lexeme)


GRADLE_DOC = {
    "type": "Extract Method",
    "extractMethod": {"sourceMethodsCount": 1, "sourceMethodLines": 167, "extractedLines": 97},
    "commit": {"date": "2022-03-17T17:07:34Z"},
}


class TestResolvePath:
    def test_nested_hit(self):
        assert resolve_path(GRADLE_DOC, path("extractMethod.sourceMethodLines")) == 167

    def test_missing_key(self):
        assert resolve_path(GRADLE_DOC, path("no.such.key")) is MISSING

    def test_array_mapping_drops_misses(self):
        doc = {"a": [{"b": 1}, {"b": 2}, {"c": 3}]}
        assert resolve_path(doc, path("a.b")) == [1, 2]

    def test_empty_array_result_collapses_to_missing(self):
        assert resolve_path({"a": [{"c": 1}]}, path("a.b")) is MISSING
        assert resolve_path({"a": []}, path("a.b")) is MISSING

    def test_scalar_mid_path(self):
        assert resolve_path({"a": 5}, path("a.b")) is MISSING

    def test_full_path_returns_raw_value(self):
        assert resolve_path({"a": {"b": [1, 2]}}, path("a.b")) == [1, 2]
        assert resolve_path({"a": None}, path("a")) is None


class TestCompare:
    def test_numeric_threshold(self):
        assert compare(167, ComparisonOp.GE, num("100")) is True
        assert compare(99, ComparisonOp.GE, num("100")) is False

    def test_string_identity(self):
        assert compare("Extract Method", ComparisonOp.EQ, Str("Extract Method")) is True
        assert compare("extract method", ComparisonOp.EQ, Str("Extract Method")) is False

    def test_regex_match_against_reference_engine(self):
        # Oracle: the stdlib regex engine applied to the same inputs.
        assert compare("Rename Method", ComparisonOp.MATCH, Regex("^Rename")) is (
            re.search("^Rename", "Rename Method") is not None
        )
        assert compare(MISSING, ComparisonOp.MATCH, Regex("^Rename")) is False

    def test_match_flag(self):
        assert compare("GETTER", ComparisonOp.MATCH, Regex("^get", ignore_case=True)) is True
        assert compare("GETTER", ComparisonOp.MATCH, Regex("^get")) is False

    def test_match_only_on_strings(self):
        assert compare(123, ComparisonOp.MATCH, Regex("1")) is False
        assert compare(None, ComparisonOp.MATCH, Regex(".")) is False
        assert compare(True, ComparisonOp.MATCH, Regex(".")) is False

    def test_str_literal_as_regex(self):
        assert compare("my extractor", ComparisonOp.MATCH, Str("extract")) is True
        assert compare("EXTRACT", ComparisonOp.MATCH, Str("extract")) is False  # case-sensitive

    def test_num_literal_eq_string_lexeme(self):
        assert compare("007", ComparisonOp.EQ, num("007")) is True
        assert compare("7", ComparisonOp.EQ, num("007")) is False
        assert compare(7, ComparisonOp.EQ, num("007")) is True

    def test_numeric_eq_across_int_float(self):
        assert compare(167.0, ComparisonOp.EQ, num("167")) is True
        assert compare(0.1, ComparisonOp.EQ, num("0.1")) is True

    def test_string_ordering_is_lexicographic(self):
        assert compare("2022-03-17", ComparisonOp.GE, Str("2022-01-01")) is True
        assert compare("2022-03-17", ComparisonOp.LT, Str("2023-01-01")) is True

    def test_mixed_type_ordering_is_false(self):
        assert compare("10", ComparisonOp.LT, num("20")) is False
        assert compare(10, ComparisonOp.LT, Str("20")) is False
        assert compare(True, ComparisonOp.LT, num("2")) is False

    def test_missing_and_null(self):
        assert compare(MISSING, ComparisonOp.EQ, Str("x")) is False
        assert compare(None, ComparisonOp.EQ, Str("x")) is False
        assert compare(MISSING, ComparisonOp.NEQ, Str("x")) is True
        assert compare(None, ComparisonOp.NEQ, Str("x")) is True
        assert compare(MISSING, ComparisonOp.GE, num("0")) is False

    def test_array_exists_semantics(self):
        assert compare([1, 50], ComparisonOp.GE, num("40")) is True
        assert compare([1, 2], ComparisonOp.GE, num("40")) is False
        assert compare(["a", "b"], ComparisonOp.EQ, Str("b")) is True
        assert compare(["a", "b"], ComparisonOp.NEQ, Str("b")) is False
        assert compare([], ComparisonOp.EQ, Str("b")) is False
        assert compare([], ComparisonOp.NEQ, Str("b")) is True

    def test_bool_never_equals_literal(self):
        assert compare(True, ComparisonOp.EQ, num("1")) is False
        assert compare(False, ComparisonOp.EQ, Str("False")) is False


class TestEvalQuery:
    def test_reference_query_on_reference_doc(self):
        ast = parse_query('type = "Extract Method" & extractMethod.sourceMethodLines >= 100')
        assert eval_query(ast, GRADLE_DOC) is True

    def test_mismatched_type(self):
        ast = parse_query('type = "Extract Method"')
        assert eval_query(ast, {"type": "Rename Method"}) is False

    def test_or_and(self):
        ast = parse_query("a = 1 | b = 2 & c = 3")
        assert eval_query(ast, {"a": 1}) is True
        assert eval_query(ast, {"b": 2, "c": 3}) is True
        assert eval_query(ast, {"b": 2, "c": 4}) is False


class TestIndexCandidates:
    def test_conjunction_yields_both(self):
        ast = parse_query('type = "Extract Method" & x >= 100')
        assert [c.path.dotted for c in index_candidates(ast)] == ["type", "x"]

    def test_disjunction_pins_nothing(self):
        assert index_candidates(parse_query("a = 1 | b = 2")) == []

    def test_or_under_and_contributes_nothing(self):
        ast = parse_query('(a = 1 | b = 2) & type = "Extract Method"')
        assert [c.path.dotted for c in index_candidates(ast)] == ["type"]


class TestLaws:
    def test_complement_law_bulk(self):
        rng = random.Random(404)
        docs = make_corpus(rng, 120)
        for _ in range(150):
            cmp_node = make_query(rng)
            while not isinstance(cmp_node, Cmp):
                cmp_node = make_query(rng)
            if isinstance(cmp_node.literal, Regex):
                continue
            eq = Cmp(cmp_node.path, ComparisonOp.EQ, cmp_node.literal)
            neq = Cmp(cmp_node.path, ComparisonOp.NEQ, cmp_node.literal)
            for doc in docs:
                assert eval_query(neq, doc) == (not eval_query(eq, doc))

    def test_set_algebra(self):
        rng = random.Random(77)
        docs = make_corpus(rng, 150)
        for _ in range(60):
            q1, q2 = make_query(rng), make_query(rng)
            m1 = {d["id"] for d in docs if eval_query(q1, d)}
            m2 = {d["id"] for d in docs if eval_query(q2, d)}
            union = {d["id"] for d in docs if eval_query(Or(q1, q2), d)}
            inter = {d["id"] for d in docs if eval_query(And(q1, q2), d)}
            assert union == m1 | m2
            assert inter == m1 & m2

    def test_scalar_vs_singleton_array(self):
        rng = random.Random(99)
        scalars = [5, "x", "2020-01-01", 3.5, True, None]
        for _ in range(200):
            node = make_query(rng)
            while not isinstance(node, Cmp):
                node = make_query(rng)
            for scalar in scalars:
                direct = compare(scalar, node.op, node.literal)
                wrapped = compare([scalar], node.op, node.literal)
                assert direct == wrapped

    def test_totality_never_raises(self):
        rng = random.Random(123)
        docs = make_corpus(rng, 50)
        weird_docs = docs + [{}, {"commit": None}, {"type": [1, [2, ["x"]]]}, {"a": {"b": {"c": []}}}]
        for _ in range(120):
            query = make_query(rng)
            for doc in weird_docs:
                result = eval_query(query, doc)
                assert result is True or result is False


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_oracle_agreement_random_seeds(seed):
    rng = random.Random(seed)
    docs = make_corpus(rng, 10)
    for _ in range(6):
        query = make_query(rng)
        compiled = compile_query(query)
        for doc in docs:
            expected = oracle_eval(query, doc)
            assert eval_query(query, doc) == expected
            assert compiled(doc) == expected


def test_oracle_agreement_bulk():
    # The acceptance suite runs the full-size version; this keeps the
    # law in the unit suite at a quick size.
    rng = random.Random(2024)
    docs = make_corpus(rng, 200)
    queries = [make_query(rng) for _ in range(40)]
    for query in queries:
        compiled = compile_query(query)
        for doc in docs:
            expected = oracle_eval(query, doc)
            assert eval_query(query, doc) == expected
            assert compiled(doc) == expected
