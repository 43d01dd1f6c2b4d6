"""Shared fixtures: the Gradle-style reference ingestion fixture."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

GRADLE_SHA = "e35b0a8c39182fdfbd11164eee028099657c0393"
GRADLE_REPO = "https://github.com/gradle/gradle"
GRADLE_FILE = "subprojects/core/src/main/java/org/gradle/api/internal/NamedObjectInstantiator.java"

# The reference commit: a 167-line loaderFor(Class) decomposed, with the
# extracted generateImplementationClassFor(Class) weighing 97 lines, on a
# commit touching 2 files (+171/-175) carrying 5 detected refactorings.
REFDIFF_EXPORT = {
    "commits": [
        {
            "sha1": GRADLE_SHA,
            "relationships": [
                {
                    "type": "EXTRACT",
                    "nodeBefore": {
                        "type": "Method",
                        "name": "loaderFor(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 38,
                        "endLine": 204,
                    },
                    "nodeAfter": {
                        "type": "Method",
                        "name": "generateImplementationClassFor(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 206,
                        "endLine": 302,
                    },
                },
                {
                    "type": "EXTRACT",
                    "nodeBefore": {
                        "type": "Method",
                        "name": "loaderFor(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 38,
                        "endLine": 204,
                    },
                    "nodeAfter": {
                        "type": "Method",
                        "name": "generateFactoryClassFor(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 304,
                        "endLine": 351,
                    },
                },
                {
                    "type": "EXTRACT",
                    "nodeBefore": {
                        "type": "Method",
                        "name": "loaderFor(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 38,
                        "endLine": 204,
                    },
                    "nodeAfter": {
                        "type": "Method",
                        "name": "validate(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 353,
                        "endLine": 371,
                    },
                },
                {
                    "type": "RENAME",
                    "nodeBefore": {
                        "type": "Method",
                        "name": "getLoader(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 20,
                        "endLine": 29,
                    },
                    "nodeAfter": {
                        "type": "Method",
                        "name": "retrieveLoader(Class)",
                        "file": GRADLE_FILE,
                        "beginLine": 20,
                        "endLine": 29,
                    },
                },
                {
                    "type": "INLINE",
                    "nodeBefore": {
                        "type": "Method",
                        "name": "tinyHelper()",
                        "file": GRADLE_FILE,
                        "beginLine": 400,
                        "endLine": 404,
                    },
                    "nodeAfter": {
                        "type": "Method",
                        "name": "caller()",
                        "file": GRADLE_FILE,
                        "beginLine": 380,
                        "endLine": 398,
                    },
                },
            ],
        }
    ]
}

GRADLE_COMMIT = {
    "sha1": GRADLE_SHA,
    "date": "2022-03-17T17:07:34Z",
    "message": "Polish `NamedObjectInstantiator`",
    "authorName": "Paul Merlin",
    "filesChanged": 2,
    "linesInserted": 171,
    "linesDeleted": 175,
}


@pytest.fixture
def gradle_fixture(tmp_path: Path) -> dict:
    """Write the RefDiff export and commits JSONL; return their paths."""
    refdiff_path = tmp_path / "refdiff.json"
    refdiff_path.write_text(json.dumps(REFDIFF_EXPORT), encoding="utf-8")
    commits_path = tmp_path / "commits.jsonl"
    commits_path.write_text(json.dumps(GRADLE_COMMIT) + "\n", encoding="utf-8")
    return {
        "refdiff_json": str(refdiff_path),
        "commits_jsonl": str(commits_path),
        "repo": GRADLE_REPO,
        "sha1": GRADLE_SHA,
        "case_count": 5,
    }


@pytest.fixture
def store(tmp_path: Path):
    from refsearch.store import CaseStore

    s = CaseStore(tmp_path / "data")
    yield s
    s.close()


@pytest.fixture
def memory_store():
    from refsearch.store import CaseStore

    s = CaseStore(None)
    yield s
    s.close()
