import random

import numpy as np
import pytest
from hypothesis import strategies as st

from polykirchhoff.chains import ChainSpec, build_chain


@st.composite
def chain_specs(draw, k=(5, 8), h=(1, 6)):
    kk = draw(st.integers(*k))
    hh = draw(st.integers(*h))
    w = draw(st.lists(st.integers(0, kk - 4), min_size=max(hh - 2, 0), max_size=max(hh - 2, 0)))
    return ChainSpec(kk, hh, tuple(w))


def random_spec(rng, k=(5, 8), h=(2, 6)):
    kk = rng.randint(*k)
    hh = rng.randint(*h)
    return ChainSpec(kk, hh, tuple(rng.randint(0, kk - 4) for _ in range(max(hh - 2, 0))))


def random_weights(rng, spec, lo=0.1, hi=10.0):
    return {e: rng.uniform(lo, hi) for e in build_chain(spec).edges}


def pinv_resistance(n, triples):
    """Resistance matrix from the Moore-Penrose pseudoinverse; test-only oracle."""
    lap = np.zeros((n, n))
    for u, v, r in triples:
        c = 1.0 / float(r)
        lap[u, u] += c
        lap[v, v] += c
        lap[u, v] -= c
        lap[v, u] -= c
    lp = np.linalg.pinv(lap)
    d = np.diag(lp)
    return d[:, None] + d[None, :] - 2 * lp


@pytest.fixture
def rng():
    return random.Random(20221012)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for the running acceptance criterion.

    The test sets ``state["detail"]``; the verdict comes from whether the
    test body raised.
    """
    state = {"detail": ""}
    yield state
    call = getattr(request.node, "rep_call", None)
    passed = call is not None and call.passed
    name = request.node.name.removeprefix("test_")
    line = f"{'PASS' if passed else 'FAIL'} {name}: {state['detail']}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
