import pytest
from hypothesis import strategies as st

from oracles import tame_primes

EXAMPLE_P = 3
EXAMPLE_S = (7, 13, 19, 61, 163)
EXAMPLE_T = (7, 19, 61, 163)
EXAMPLE_EDGES = {
    (7, 13), (7, 61), (7, 163), (13, 19), (13, 61), (19, 7), (19, 13),
    (19, 61), (19, 163), (61, 7), (61, 13), (61, 19), (163, 7), (163, 13),
}

TAME = {p: tame_primes(p, 1500) for p in (3, 5, 7)}


@st.composite
def prime_sets(draw, min_size=1, max_size=6, ps=(3, 5, 7)):
    p = draw(st.sampled_from(ps))
    S = draw(st.lists(st.sampled_from(TAME[p]), min_size=min_size, max_size=max_size, unique=True))
    return p, tuple(sorted(S))


@pytest.fixture(scope="session")
def example_diagram():
    from primelink import build_diagram

    return build_diagram(EXAMPLE_P, EXAMPLE_S)


_ACCEPTANCE: list[tuple[int, bool, str]] = []


def record_acceptance(number, ok, detail):
    _ACCEPTANCE.append((number, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
