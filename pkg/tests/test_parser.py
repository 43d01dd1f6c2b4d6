"""Parser: reference query ASTs, precedence, and error reporting."""

from decimal import Decimal

import pytest

from refsearch.querylang import (
    And,
    Cmp,
    ComparisonOp,
    FieldPath,
    Num,
    Or,
    ParseError,
    Regex,
    Str,
    parse_query,
)


def path(dotted: str) -> FieldPath:
    return FieldPath(tuple(dotted.split(".")))


def num(lexeme: str) -> Num:
    return Num(Decimal(lexeme), lexeme)


class TestReferenceQueries:
    def test_rename_chain(self):
        ast = parse_query('type ~ /^Rename/ & rename.from ~ /^get/i & rename.to ~ /^retrieve/i')
        assert ast == And(
            Cmp(path("type"), ComparisonOp.MATCH, Regex("^Rename")),
            And(
                Cmp(path("rename.from"), ComparisonOp.MATCH, Regex("^get", ignore_case=True)),
                Cmp(path("rename.to"), ComparisonOp.MATCH, Regex("^retrieve", ignore_case=True)),
            ),
        )

    def test_source_methods_count(self):
        ast = parse_query('type = "Extract Method" & extractMethod.sourceMethodsCount >= 2')
        assert ast == And(
            Cmp(path("type"), ComparisonOp.EQ, Str("Extract Method")),
            Cmp(path("extractMethod.sourceMethodsCount"), ComparisonOp.GE, num("2")),
        )

    def test_source_method_lines(self):
        ast = parse_query('type = "Extract Method" & extractMethod.sourceMethodLines >= 100')
        assert ast == And(
            Cmp(path("type"), ComparisonOp.EQ, Str("Extract Method")),
            Cmp(path("extractMethod.sourceMethodLines"), ComparisonOp.GE, num("100")),
        )

    def test_commit_message_regex(self):
        ast = parse_query('type = "Extract Method" & commit.message ~ /extract/i')
        assert ast == And(
            Cmp(path("type"), ComparisonOp.EQ, Str("Extract Method")),
            Cmp(path("commit.message"), ComparisonOp.MATCH, Regex("extract", ignore_case=True)),
        )

    def test_extracted_lines(self):
        ast = parse_query('type = "Extract Method" & extractMethod.extractedLines >= 10')
        assert ast == And(
            Cmp(path("type"), ComparisonOp.EQ, Str("Extract Method")),
            Cmp(path("extractMethod.extractedLines"), ComparisonOp.GE, num("10")),
        )


class TestPrecedence:
    def test_and_binds_tighter(self):
        ast = parse_query("a = 1 | b = 2 & c = 3")
        assert ast == Or(
            Cmp(path("a"), ComparisonOp.EQ, num("1")),
            And(
                Cmp(path("b"), ComparisonOp.EQ, num("2")),
                Cmp(path("c"), ComparisonOp.EQ, num("3")),
            ),
        )

    def test_parentheses_override(self):
        ast = parse_query("(a = 1 | b = 2) & c = 3")
        assert ast == And(
            Or(
                Cmp(path("a"), ComparisonOp.EQ, num("1")),
                Cmp(path("b"), ComparisonOp.EQ, num("2")),
            ),
            Cmp(path("c"), ComparisonOp.EQ, num("3")),
        )

    def test_chains_are_right_associative(self):
        ast = parse_query("a = 1 & b = 2 & c = 3")
        assert ast == And(
            Cmp(path("a"), ComparisonOp.EQ, num("1")),
            And(
                Cmp(path("b"), ComparisonOp.EQ, num("2")),
                Cmp(path("c"), ComparisonOp.EQ, num("3")),
            ),
        )


class TestLiterals:
    def test_bare_word_right_operand_is_string(self):
        ast = parse_query("commit.date >= 2022-01-01")
        assert ast == Cmp(path("commit.date"), ComparisonOp.GE, Str("2022-01-01"))

    def test_numeric_lexeme_retained(self):
        ast = parse_query("x = 007")
        assert ast.literal == Num(Decimal("7"), "007")
        assert parse_query("x = -3.50").literal == Num(Decimal("-3.50"), "-3.50")

    def test_trailing_dot_is_not_numeric(self):
        assert parse_query("x = 5.").literal == Str("5.")

    def test_whitespace_is_flexible(self):
        assert parse_query("a=1&b=2") == parse_query("a = 1 & b = 2")
        assert parse_query("( a = 1 )") == parse_query("(a = 1)")


class TestErrors:
    def err(self, text) -> ParseError:
        with pytest.raises(ParseError) as excinfo:
            parse_query(text)
        exc = excinfo.value
        assert 0 <= exc.offset <= len(text.encode("utf-8"))
        assert exc.offset + exc.length <= len(text.encode("utf-8"))
        return exc

    def test_empty_input(self):
        exc = self.err("")
        assert exc.offset == 0
        self.err("   ")

    def test_missing_operand(self):
        exc = self.err("a = ")
        assert exc.offset == 2  # points at the operator missing its value
        self.err("a =")
        self.err("& a = 1")
        self.err("a = 1 &")
        self.err("a = 1 | ")

    def test_operator_without_operands(self):
        self.err("=")
        self.err("= 1")

    def test_unbalanced_parens(self):
        exc = self.err("(a = 1")
        assert exc.offset == 0  # the unclosed '('
        self.err("a = 1)")
        self.err("((a = 1)")

    def test_regex_needs_match_operator(self):
        exc = self.err("a = /x/")
        assert "~" in exc.message

    def test_quoted_or_regex_left_side_rejected(self):
        exc = self.err('"a" = 1')
        assert "field path" in exc.message
        self.err("/a/ ~ b")

    def test_empty_path_segment(self):
        self.err("a..b = 1")
        self.err(".a = 1")
        self.err("a. = 1")

    def test_invalid_regex(self):
        exc = self.err("a ~ /(/")
        assert "regex" in exc.message.lower()

    def test_unsupported_regex_dialect(self):
        self.err(r"a ~ /(?=x)/")
        self.err(r"a ~ /(x)\1/")
        self.err(r"a ~ /(?<=x)y/")

    def test_trailing_tokens(self):
        self.err("a = 1 b = 2")


class TestForwardProgress:
    """Fixing the reported span lets the parse proceed."""

    def test_unterminated_quote_fixable(self):
        text = 'a = "unclosed'
        with pytest.raises(ParseError) as excinfo:
            parse_query(text)
        assert excinfo.value.offset == 4
        parse_query(text + '"')  # closing the quote repairs it

    def test_unbalanced_paren_fixable(self):
        text = "(a = 1"
        with pytest.raises(ParseError) as excinfo:
            parse_query(text)
        offset = excinfo.value.offset
        # Removing the reported '(' repairs it, as does closing it.
        parse_query(text[:offset] + text[offset + 1 :])
        parse_query(text + ")")
