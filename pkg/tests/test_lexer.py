"""Tokenizer behavior: token shapes, maximal words, regex bounds, errors."""

import pytest

from refsearch.querylang import ParseError, tokenize
from refsearch.querylang.lexer import AMP, LPAREN, OP, PIPE, REGEX, RPAREN, STRING, WORD


def kinds(text):
    return [t.kind for t in tokenize(text)]


def values(text):
    return [t.value for t in tokenize(text)]


def test_quoted_string_query():
    tokens = tokenize('type = "Extract Method"')
    assert [(t.kind, t.value) for t in tokens] == [
        (WORD, "type"),
        (OP, "="),
        (STRING, "Extract Method"),
    ]


def test_regex_with_flag():
    tokens = tokenize("rename.from ~ /^get/i")
    assert [(t.kind, t.value) for t in tokens] == [(WORD, "rename.from"), (OP, "~"), (REGEX, "^get")]
    assert tokens[2].flags == "i"


def test_unterminated_quote_offset():
    with pytest.raises(ParseError) as err:
        tokenize('a = "unclosed')
    assert err.value.offset == 4


def test_unterminated_regex():
    with pytest.raises(ParseError) as err:
        tokenize("a ~ /unclosed")
    assert err.value.offset == 4


def test_unknown_regex_flag():
    with pytest.raises(ParseError) as err:
        tokenize("a ~ /x/z")
    assert "flag" in err.value.message
    assert err.value.offset == 7


def test_operators_longest_match():
    assert values("a<=b") == ["a", "<=", "b"]
    assert values("a<b") == ["a", "<", "b"]
    assert values("a>=b") == ["a", ">=", "b"]
    assert values("a!=b") == ["a", "!=", "b"]


def test_words_are_maximal_runs():
    assert values("commit.size.files.changed >= 2") == ["commit.size.files.changed", ">=", "2"]
    # `!` stays inside a word unless it begins `!=`.
    assert values("a = wow!") == ["a", "=", "wow!"]
    # Slashes are plain word characters except at a token start.
    assert values("x = a/b") == ["x", "=", "a/b"]


def test_parens_amp_pipe():
    assert kinds('(a = 1) & b = 2 | c = 3') == [
        LPAREN, WORD, OP, WORD, RPAREN, AMP, WORD, OP, WORD, PIPE, WORD, OP, WORD,
    ]


def test_string_escapes():
    tokens = tokenize(r'a = "say \"hi\" \\ back"')
    assert tokens[2].value == 'say "hi" \\ back'
    # Unknown escapes keep their backslash.
    assert tokenize(r'a = "x\ny"')[2].value == "x\\ny"


def test_regex_may_contain_grammar_characters():
    tokens = tokenize("type ~ /^(Rename|Move)$/ & a = 1")
    assert tokens[2].kind == REGEX
    assert tokens[2].value == "^(Rename|Move)$"
    assert tokens[3].kind == AMP


def test_regex_pattern_ends_at_last_unescaped_slash():
    tokens = tokenize(r"path ~ /src\/main/")
    assert tokens[2].value == r"src\/main"
    tokens = tokenize("path ~ /a/b/")
    assert tokens[2].value == "a/b"


def test_regex_token_ends_before_delimiter():
    tokens = tokenize("(a ~ /x/)")
    assert [t.kind for t in tokens] == [LPAREN, WORD, OP, REGEX, RPAREN]
    tokens = tokenize("(a ~ /x/i)&b=1")
    assert [t.kind for t in tokens] == [LPAREN, WORD, OP, REGEX, RPAREN, AMP, WORD, OP, WORD]


def test_relex_identity():
    # Joining lexemes with single spaces must re-lex to the same tokens.
    samples = [
        'type = "Extract Method" & extractMethod.extractedLines >= 10',
        "type ~ /^Rename/ & rename.from ~ /^get/i & rename.to ~ /^retrieve/i",
        '(a = 1 | b = 2) & c != "x y"',
        r'f = a/b & g ~ /a\/(b|c)/i',
        "n >= -3.25 | s = wow!",
    ]
    for text in samples:
        first = tokenize(text)
        again = tokenize(" ".join(t.lexeme for t in first))
        assert [(t.kind, t.value, t.flags) for t in first] == [
            (t.kind, t.value, t.flags) for t in again
        ]


def test_empty_and_whitespace():
    assert tokenize("") == []
    assert tokenize("   \t ") == []


def test_offsets_are_bytes():
    # Multi-byte character before the error shifts the byte offset.
    with pytest.raises(ParseError) as err:
        tokenize('Ä = "unclosed')
    assert err.value.offset == 5  # 'Ä' is two bytes
