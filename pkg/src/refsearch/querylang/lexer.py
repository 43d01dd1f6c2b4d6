"""Tokenizer for the query language.

Token kinds: bare words, quoted strings, regex literals, comparison
operators, parentheses, `&` and `|`. Bare words are maximal runs of
visible non-space characters; `( ) & | "` and the operator characters
`= < > ~` always end a word, `!` only when it begins `!=` (so words like
`wow!` survive). A `/` opens a regex literal only at a token boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, error_at

WORD = "word"
STRING = "string"
REGEX = "regex"
OP = "op"
LPAREN = "lparen"
RPAREN = "rparen"
AMP = "amp"
PIPE = "pipe"

# Characters that terminate a bare word or a regex-flag run.
_BREAKERS = set('()&|"=<>~')

_SIMPLE = {"(": LPAREN, ")": RPAREN, "&": AMP, "|": PIPE}


@dataclass
class Token:
    kind: str
    value: str
    lexeme: str
    pos: int  # character offset into the query
    flags: str = field(default="")


def tokenize(text: str) -> list[Token]:
    """Lex a query string; raises ParseError on malformed input."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SIMPLE:
            tokens.append(Token(_SIMPLE[ch], ch, ch, i))
            i += 1
            continue
        if ch == '"':
            token, i = _lex_string(text, i)
            tokens.append(token)
            continue
        if ch in "=~":
            tokens.append(Token(OP, ch, ch, i))
            i += 1
            continue
        if ch in "<>":
            # Longest match: <= and >= before < and >.
            if i + 1 < n and text[i + 1] == "=":
                tokens.append(Token(OP, ch + "=", ch + "=", i))
                i += 2
            else:
                tokens.append(Token(OP, ch, ch, i))
                i += 1
            continue
        if ch == "!" and i + 1 < n and text[i + 1] == "=":
            tokens.append(Token(OP, "!=", "!=", i))
            i += 2
            continue
        if ch == "/":
            token, i = _lex_regex(text, i)
            tokens.append(token)
            continue
        token, i = _lex_word(text, i)
        tokens.append(token)
    return tokens


def _lex_word(text: str, start: int) -> tuple[Token, int]:
    i = start
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch in _BREAKERS:
            break
        if ch == "!" and i + 1 < n and text[i + 1] == "=":
            break
        i += 1
    word = text[start:i]
    return Token(WORD, word, word, start), i


def _lex_string(text: str, start: int) -> tuple[Token, int]:
    # start points at the opening quote.
    i = start + 1
    n = len(text)
    chars: list[str] = []
    while i < n:
        ch = text[i]
        if ch == '"':
            lexeme = text[start : i + 1]
            return Token(STRING, "".join(chars), lexeme, start), i + 1
        if ch == "\\" and i + 1 < n and text[i + 1] in '"\\':
            chars.append(text[i + 1])
            i += 2
            continue
        chars.append(ch)
        i += 1
    raise error_at(text, "unterminated quoted string", start)


def _lex_regex(text: str, start: int) -> tuple[Token, int]:
    # start points at the opening slash. The token lives inside the maximal
    # whitespace-free run; the pattern ends at the last unescaped `/` in it.
    i = start
    n = len(text)
    while i < n and not text[i].isspace():
        i += 1
    chunk = text[start:i]
    close = None
    escaped = False
    for k in range(1, len(chunk)):
        if escaped:
            escaped = False
            continue
        if chunk[k] == "\\":
            escaped = True
        elif chunk[k] == "/":
            close = k
    if close is None:
        raise error_at(text, "unterminated regex literal", start)
    pattern = chunk[1:close]
    k = close + 1
    flags = ""
    while k < len(chunk) and chunk[k] == "i":
        flags = "i"
        k += 1
    end = start + k
    if k < len(chunk):
        trailing = chunk[k]
        if trailing not in _BREAKERS:
            raise error_at(text, f"unknown regex flag {trailing!r}", start + k)
        # A delimiter right after the flags ends the token; re-lex it normally.
    lexeme = text[start:end]
    return Token(REGEX, pattern, lexeme, start, flags=flags), end
