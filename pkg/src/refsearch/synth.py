"""Deterministic synthetic corpus generator for benchmarks and load tests.

Produces case documents with a realistic shape: a dozen refactoring
types, commit dates spanning ten years, get->retrieve rename pairs,
extract sizes with a long tail, and commit messages that sometimes
mention extraction. Commit metadata is shared per (commit, tool) group
so refactorings.total stays consistent with what is actually generated.
"""

from __future__ import annotations

import random
from typing import Iterator

from .model import case_id_from_parts

TYPES = (
    ("Extract Method", 15),
    ("Rename Method", 14),
    ("Rename Variable", 12),
    ("Rename Parameter", 10),
    ("Extract Variable", 8),
    ("Move Method", 8),
    ("Move Class", 7),
    ("Rename Class", 6),
    ("Change Parameter Type", 6),
    ("Inline Method", 5),
    ("Pull Up Method", 4),
    ("Add Parameter", 5),
)

_REPOSITORIES = tuple(
    f"https://github.com/synthetic/{name}"
    for name in (
        "anvil", "orchard", "lattice", "quarry", "beacon",
        "mosaic", "harbor", "crucible", "zephyr", "drift",
    )
)

_AUTHORS = (
    "Ada Keller", "Jonas Brandt", "Mina Park", "Lucas Ferro", "Ines Kovac",
    "Timo Laine", "Greta Moss", "Noel Abadi", "Petra Salo", "Yuki Tan",
)

_MESSAGES = (
    "Compose methods",
    "Extract common validation logic",
    "Refactor: extract helper for request parsing",
    "Polish internals before release",
    "Simplify configuration loading",
    "Extract method to reduce duplication",
    "Fix flaky integration test",
    "Rename fields for clarity",
    "Tidy up error handling",
    "Move helpers into shared module",
    "Inline trivial wrappers",
    "Split oversized service class",
    "Improve logging around retries",
    "Update dependency pins",
    "Extract builder for report rendering",
    "Rework cache invalidation",
    "Reduce allocation churn in hot path",
    "Clean up dead code",
    "Align naming with style guide",
    "Refactor parser internals",
)

_VERB_PAIRS = (
    ("get", "retrieve"),
    ("get", "fetch"),
    ("fetch", "load"),
    ("calc", "compute"),
    ("make", "build"),
    ("check", "validate"),
    ("find", "lookup"),
    ("read", "parse"),
)

_NOUNS = (
    "Width", "Config", "Session", "Token", "Report", "Order", "Invoice",
    "User", "Schema", "Buffer", "Header", "Route", "Metric", "Snapshot",
)

_MODULES = (
    "core", "api", "auth", "billing", "render", "parser", "cache",
    "transport", "scheduler", "metrics",
)


def generate_corpus(count: int, seed: int = 7) -> Iterator[dict]:
    """Yield `count` unique case documents, deterministically from the seed."""
    rng = random.Random(seed)
    type_names = [t for t, _ in TYPES]
    type_weights = [w for _, w in TYPES]
    start_epoch = 1357000000  # early 2013
    span = 10 * 365 * 24 * 3600  # ten years of dates

    produced = 0
    serial = 0
    while produced < count:
        sha1 = f"{rng.getrandbits(160):040x}"
        repository = rng.choice(_REPOSITORIES)
        epoch = start_epoch + rng.randrange(span)
        date = _format_epoch(epoch)
        message = rng.choice(_MESSAGES)
        author = rng.choice(_AUTHORS)
        size = {
            "files": {"changed": rng.randint(1, 24)},
            "lines": {"inserted": rng.randint(0, 900), "deleted": rng.randint(0, 700)},
        }
        n_cases = min(rng.choices((1, 2, 3, 4, 5, 8), weights=(42, 24, 14, 10, 7, 3))[0], count - produced)

        drafts = []
        per_tool: dict[str, int] = {}
        for _ in range(n_cases):
            serial += 1
            tool = "RefDiff" if rng.random() < 0.5 else "RefactoringMiner"
            per_tool[tool] = per_tool.get(tool, 0) + 1
            drafts.append((tool, _draft_case(rng, type_names, type_weights, serial)))

        commit_by_tool = {
            tool: {
                "date": date,
                "message": message,
                "authorName": author,
                "sha1": sha1,
                "size": size,
                "refactorings": {"total": total},
            }
            for tool, total in per_tool.items()
        }

        for tool, draft in drafts:
            doc = draft
            doc["repository"] = repository
            doc["commit"] = commit_by_tool[tool]
            doc["meta"] = {"tool": tool}
            doc["id"] = case_id_from_parts(
                repository,
                sha1,
                tool,
                doc["type"],
                doc["description"],
                doc.get("before", {}).get("name", ""),
                doc.get("after", {}).get("name", ""),
            )
            produced += 1
            yield doc


def _format_epoch(epoch: int) -> str:
    # Cheap UTC formatting; avoids datetime object churn in the hot loop.
    days, rem = divmod(epoch, 86400)
    hh, rem = divmod(rem, 3600)
    mm, ss = divmod(rem, 60)
    year, month, day = _civil_from_days(days)
    return f"{year:04d}-{month:02d}-{day:02d}T{hh:02d}:{mm:02d}:{ss:02d}Z"


def _civil_from_days(days: int) -> tuple[int, int, int]:
    # Gregorian conversion (Howard Hinnant's civil_from_days).
    days += 719468
    era = days // 146097
    doe = days - era * 146097
    yoe = (doe - doe // 1460 + doe // 36524 - doe // 146096) // 365
    year = yoe + era * 400
    doy = doe - (365 * yoe + yoe // 4 - yoe // 100)
    mp = (5 * doy + 2) // 153
    day = doy - (153 * mp + 2) // 5 + 1
    month = mp + 3 if mp < 10 else mp - 9
    if month <= 2:
        year += 1
    return year, month, day


def _draft_case(rng: random.Random, type_names, type_weights, serial: int) -> dict:
    rtype = rng.choices(type_names, weights=type_weights)[0]
    module = rng.choice(_MODULES)
    noun = rng.choice(_NOUNS)
    path = f"src/{module}/{noun}Service.java"

    if rtype == "Extract Method":
        source_lines = min(3 + int(rng.expovariate(1 / 45.0)), 600)
        extracted_lines = rng.randint(2, max(3, source_lines * 2 // 3))
        count = rng.choices((1, 2, 3, 4), weights=(78, 15, 5, 2))[0]
        source = f"process{noun}{serial}({noun})"
        target = f"extract{noun}Part{serial}({noun})"
        begin = rng.randint(10, 4000)
        return {
            "type": rtype,
            "description": f"Extracted method {target} from {source}",
            "before": {
                "name": source,
                "location": {"file": path, "lines": source_lines, "begin": begin, "end": begin + source_lines - 1},
            },
            "after": {
                "name": target,
                "location": {"file": path, "lines": extracted_lines},
            },
            "extractMethod": {
                "sourceMethodsCount": count,
                "sourceMethodLines": source_lines,
                "extractedLines": extracted_lines,
            },
        }

    if rtype.startswith("Rename"):
        from_verb, to_verb = rng.choice(_VERB_PAIRS)
        if rtype == "Rename Class":
            from_name, to_name = f"{noun}Impl{serial}", f"Default{noun}{serial}"
        else:
            from_name, to_name = f"{from_verb}{noun}{serial}", f"{to_verb}{noun}{serial}"
        lines = rng.randint(1, 80)
        return {
            "type": rtype,
            "description": f"Renamed {from_name} to {to_name}",
            "before": {"name": f"{from_name}()", "location": {"file": path, "lines": lines}},
            "after": {"name": f"{to_name}()", "location": {"file": path, "lines": lines}},
            "rename": {"from": from_name, "to": to_name},
        }

    lines = rng.randint(1, 160)
    name = f"handle{noun}{serial}({noun})"
    return {
        "type": rtype,
        "description": f"{rtype}: {name}",
        "before": {"name": name, "location": {"file": path, "lines": lines}},
        "after": {"name": name, "location": {"file": path, "lines": lines}},
    }


def generate_into(store, count: int, seed: int = 7, batch_size: int = 20000) -> int:
    """Generate and store a corpus in batches; returns how many were stored."""
    stored = 0
    batch: list[dict] = []
    for doc in generate_corpus(count, seed):
        batch.append(doc)
        if len(batch) >= batch_size:
            stored += store.put_cases(batch)["stored"]
            batch = []
    if batch:
        stored += store.put_cases(batch)["stored"]
    return stored
