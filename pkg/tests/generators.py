"""Seeded random document and query generators for equivalence testing.

Documents look like sloppy real-world cases: the three indexed paths
(type, repository, commit.date) stay scalar as conforming corpora
guarantee, everything else may be nested junk, arrays, nulls, or
mixed-type values. Queries exercise every operator, both literal kinds,
regexes, and arbitrary and/or shapes.
"""

from __future__ import annotations

import random
from decimal import Decimal

from refsearch.querylang.ast import And, Cmp, ComparisonOp, FieldPath, Num, Or, Regex, Str

TYPES = (
    "Extract Method",
    "Rename Method",
    "Rename Class",
    "Move Method",
    "Inline Method",
    "Extract Variable",
)
REPOS = (
    "https://github.com/acme/anvil",
    "https://github.com/acme/rocket",
    "https://gitlab.com/labs/nimbus",
)
TOOLS = ("RefDiff", "RefactoringMiner")
WORDS = ("get", "retrieve", "fetch", "parse", "Widget", "Config", "extract", "Polish")


def make_doc(rng: random.Random, serial: int) -> dict:
    date = (
        f"{rng.randint(2013, 2023):04d}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
        f"T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:{rng.randint(0, 59):02d}Z"
    )
    doc = {
        "id": f"{rng.getrandbits(160):040x}",
        "type": rng.choice(TYPES),
        "repository": rng.choice(REPOS),
        "description": " ".join(rng.choices(WORDS, k=rng.randint(1, 5))) + f" #{serial}",
        "commit": {
            "date": date,
            "sha1": f"{rng.getrandbits(160):040x}",
            "message": " ".join(rng.choices(WORDS, k=rng.randint(1, 6))),
            "size": {
                "files": {"changed": rng.randint(0, 40)},
                "lines": {"inserted": rng.randint(0, 500), "deleted": rng.randint(0, 500)},
            },
        },
        "meta": {"tool": rng.choice(TOOLS)},
    }
    if rng.random() < 0.5:
        doc["extractMethod"] = {
            "sourceMethodsCount": rng.randint(1, 4),
            "sourceMethodLines": rng.randint(0, 400),
            "extractedLines": rng.randint(0, 200),
        }
    if rng.random() < 0.4:
        doc["rename"] = {
            "from": rng.choice(("getX", "getName", "fetchRow", "parseAll")),
            "to": rng.choice(("retrieveX", "retrieveName", "loadRow", "readAll")),
        }
    if rng.random() < 0.6:
        doc["junk"] = _junk_value(rng, depth=0)
    if rng.random() < 0.3:
        doc["tags"] = rng.sample(list(WORDS), k=rng.randint(0, 3))
    if rng.random() < 0.2:
        doc["score"] = rng.choice((None, True, False, rng.random() * 100, rng.randint(-5, 5)))
    return doc


def _junk_value(rng: random.Random, depth: int):
    roll = rng.random()
    if depth >= 2 or roll < 0.35:
        return rng.choice((1, 2.5, "x", "2020-05-05", None, True, -7, "get"))
    if roll < 0.65:
        return {k: _junk_value(rng, depth + 1) for k in rng.sample(("a", "b", "c", "d"), k=rng.randint(1, 3))}
    return [_junk_value(rng, depth + 1) for _ in range(rng.randint(0, 3))]


_PATHS = (
    "type",
    "repository",
    "commit.date",
    "commit.message",
    "commit.size.files.changed",
    "commit.size.lines.inserted",
    "extractMethod.sourceMethodsCount",
    "extractMethod.sourceMethodLines",
    "rename.from",
    "rename.to",
    "meta.tool",
    "junk",
    "junk.a",
    "junk.a.b",
    "tags",
    "score",
    "nope.never",
)

_REGEXES = ("^get", "^retrieve", "Method$", "extract", "^Rename", "a.c", "[0-9]+", "^https://github")


def make_query(rng: random.Random, depth: int = 0):
    if depth < 2 and rng.random() < 0.45:
        node = And if rng.random() < 0.5 else Or
        return node(make_query(rng, depth + 1), make_query(rng, depth + 1))
    return _make_cmp(rng)


def _make_cmp(rng: random.Random) -> Cmp:
    path = FieldPath(tuple(rng.choice(_PATHS).split(".")))
    op = rng.choice(list(ComparisonOp))
    if op is ComparisonOp.MATCH:
        if rng.random() < 0.7:
            literal = Regex(rng.choice(_REGEXES), ignore_case=rng.random() < 0.5)
        else:
            literal = Str(rng.choice(WORDS))
        return Cmp(path, op, literal)
    if rng.random() < 0.45:
        lexeme = rng.choice(("0", "1", "2", "100", "167", "-3", "2.5", "40"))
        literal = Num(Decimal(lexeme), lexeme)
    else:
        literal = Str(
            rng.choice(
                (
                    "Extract Method",
                    "Rename Method",
                    "RefDiff",
                    "get",
                    "2020-01-01",
                    "2022-01-01T00:00:00Z",
                    "https://github.com/acme/anvil",
                    "x",
                )
            )
        )
    return Cmp(path, op, literal)


def make_corpus(rng: random.Random, size: int) -> list[dict]:
    return [make_doc(rng, i) for i in range(size)]
