from __future__ import annotations


class ParseError(Exception):
    """Raised for any lexical or syntactic error in a query string.

    offset/length are byte offsets into the UTF-8 encoding of the query
    (they coincide with character offsets for ASCII queries).
    """

    def __init__(self, message: str, offset: int, length: int = 1):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.length = length

    def __str__(self) -> str:
        return f"{self.message} (at offset {self.offset})"


def error_at(text: str, message: str, char_pos: int, char_len: int = 1) -> ParseError:
    """Build a ParseError from character positions, converting to byte offsets."""
    char_pos = min(char_pos, len(text))
    char_len = min(char_len, len(text) - char_pos)
    offset = len(text[:char_pos].encode("utf-8"))
    length = len(text[char_pos : char_pos + char_len].encode("utf-8"))
    return ParseError(message, offset, length)
