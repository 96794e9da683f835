import json
import os
import re
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from brace8p.abelian import parse_group
from brace8p.holomorph import holomorph
from brace8p.subgroups import closure

GOLDEN = Path(__file__).parent / "golden"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def load_listings() -> dict:
    """Parse golden/listings.txt into {name: (E, iso type, Subgroup)}."""
    out = {}
    blocks = re.split(r"^\[", (GOLDEN / "listings.txt").read_text(), flags=re.M)[1:]
    for block in blocks:
        head, *lines = [ln.strip() for ln in block.splitlines() if ln.strip()]
        name, _, attrs = head.partition("]")
        meta = dict(kv.split("=") for kv in attrs.split())
        E = parse_group(meta["group"])
        H = holomorph(E)
        elems = [H.parse(ln) for ln in lines]
        S = closure(H, elems)
        out[name] = (E, meta["type"], meta["kind"], elems, S)
    return out


@pytest.fixture(scope="session")
def listings():
    return load_listings()


@pytest.fixture(scope="session")
def published():
    return json.loads((GOLDEN / "published_tables.json").read_text())


# -- acceptance summary -------------------------------------------------------

_ACCEPTANCE: dict[str, list[str]] = {}


@pytest.fixture
def criterion(request):
    """Collects sub-check lines for the acceptance summary of the running test."""
    lines: list[str] = []
    _ACCEPTANCE[request.node.nodeid] = lines
    return lines


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.nodeid in _ACCEPTANCE:
        item.config._acceptance = getattr(item.config, "_acceptance", [])
        item.config._acceptance.append((item, rep.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", [])
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for item, passed in results:
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        tr.write_line(f"{'PASS' if passed else 'FAIL'}  {doc}")
        for line in _ACCEPTANCE.get(item.nodeid, []):
            tr.write_line(f"        {line}")
