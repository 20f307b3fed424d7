from itertools import permutations
from pathlib import Path

import pytest

from hypergroups import build_hypergroup, read_hgt
from hypergroups.enumeration import build_catalog

DATA = Path(__file__).parent / "data"


def group_table(elements, op):
    """Thin hypergroup from a group given by its elements (identity first) and operation."""
    idx = {e: i for i, e in enumerate(elements)}
    return build_hypergroup(len(elements), [[{idx[op(a, b)]} for b in elements] for a in elements])


def _compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


@pytest.fixture(scope="session")
def T1():
    return build_hypergroup(1, [[{0}]])


@pytest.fixture(scope="session")
def C2():
    return build_hypergroup(2, [[{0}, {1}], [{1}, {0}]])


@pytest.fixture(scope="session")
def K2():
    return build_hypergroup(2, [[{0}, {1}], [{1}, {0, 1}]])


@pytest.fixture(scope="session")
def W3():
    return build_hypergroup(3, [[{0}, {1}, {2}], [{1}, {0}, {2}], [{2}, {2}, {0, 1}]])


@pytest.fixture(scope="session")
def S3():
    return group_table(sorted(permutations(range(3))), _compose)


@pytest.fixture(scope="session")
def D8():
    # symmetries of a square as permutations of its corners
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    elems = {(0, 1, 2, 3)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in (r, s):
            y = _compose(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return group_table(sorted(elems), _compose)


@pytest.fixture(scope="session")
def catalog():
    """Every hypergroup of order <= 4 up to isomorphism, with ids."""
    hs = build_catalog(4)
    seq = {}
    out = []
    for H in hs:
        seq[H.order] = seq.get(H.order, 0) + 1
        out.append((f"h{H.order}_{seq[H.order]:03d}", H))
    return out


@pytest.fixture(scope="session")
def fixture_files():
    return {p.stem: p for p in DATA.glob("*.hgt")}


@pytest.fixture(scope="session")
def W3_file(fixture_files):
    return read_hgt(fixture_files["w3"])


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    if rep.when == "setup" and rep.passed:
        return
    _ACCEPTANCE[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, secs = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({secs:.2f}s)")
