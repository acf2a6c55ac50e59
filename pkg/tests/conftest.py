import functools

import pytest
from hypothesis import settings

from preprojhh.pathalg import Quiver, double
from preprojhh.preproj import frobenius_data, preprojective_algebra
from preprojhh.rootdata import root_datum

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def rd_of(label):
    return root_datum(label)


@functools.lru_cache(maxsize=None)
def dq_of(label):
    return double(Quiver.from_root_datum(rd_of(label)))


@functools.lru_cache(maxsize=None)
def algebra(label):
    return preprojective_algebra(rd_of(label), cache=None)


@functools.lru_cache(maxsize=None)
def frob(label):
    return frobenius_data(algebra(label), rd_of(label).nu)


# acceptance results, echoed in the terminal summary
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def rec(n, title, ok, detail=""):
        ACCEPTANCE[n] = (title, bool(ok), detail)
        print(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} {detail}")
        return ok
    return rec
