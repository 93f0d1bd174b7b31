import pytest

from posetlevels import _backend
from posetlevels.poset import Poset, disjoint_sum, order_composition


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="also run the slow exhaustive campaigns")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(params=_backend.available_backends())
def kernels(request):
    return _backend.get_kernels(request.param)


def rel(*pairs: str, extra: str = "") -> Poset:
    """``rel("a<b", "c<d", extra="e")`` builds a small order from cover strings."""
    names: list[str] = []
    edges = []
    for text in pairs:
        x, y = (s.strip() for s in text.split("<"))
        edges.append((x, y))
        for e in (x, y):
            if e not in names:
                names.append(e)
    names += [e for e in extra.split() if e not in names]
    return Poset.from_relations(names, edges)


@pytest.fixture
def n_poset():
    return rel("a<c", "b<c", "b<d")


@pytest.fixture
def obs1():
    return rel("a<b", "c<d")


def chain2_plus_point():
    return disjoint_sum([Poset.chain(2), Poset.antichain(1, "z")])


def based(base: Poset, top: Poset) -> Poset:
    return order_composition([base, top])


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
