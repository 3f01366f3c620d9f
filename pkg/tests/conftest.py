import os
import pathlib

import pytest

from cikit import harness

CORPUS_PATH = pathlib.Path(__file__).resolve().parent.parent / "corpus" / "standard.corpus"


@pytest.fixture(scope="session")
def corpus_entries():
    with open(CORPUS_PATH) as fh:
        return harness.parse_corpus(fh.read())


@pytest.fixture(scope="session")
def corpus_report(corpus_entries):
    """One full corpus evaluation shared by the acceptance criteria."""
    workers = min(4, os.cpu_count() or 1)
    return harness.run_corpus(corpus_entries, parallelism=workers)


def entry_by_name(report, name):
    for entry in report["entries"]:
        if entry["name"] == name:
            return entry
    raise KeyError(name)


def check_status(entry, check_name):
    for c in entry["checks"]:
        if c["name"] == check_name:
            return c["status"]
    return None
