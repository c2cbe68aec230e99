from collections import defaultdict
from pathlib import Path

import pytest

from rough_eval.ism import load_config, load_information_system
from rough_eval.proximity import attribute_partitions

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
TESTDATA = Path(__file__).resolve().parent / "data"

LEVEL1 = ("IC", "IF", "PP", "Fee", "CC")


@pytest.fixture(scope="session")
def csv_text():
    return (DATA / "institutions.csv").read_text()


@pytest.fixture(scope="session")
def config_text():
    return (DATA / "institutions.yaml").read_text()


@pytest.fixture(scope="session")
def loaded_config(config_text):
    return load_config(config_text)


@pytest.fixture(scope="session")
def config(loaded_config):
    return loaded_config[0]


@pytest.fixture(scope="session")
def specs(loaded_config):
    return loaded_config[1]


@pytest.fixture(scope="session")
def system(csv_text, specs):
    return load_information_system(csv_text, specs)


@pytest.fixture(scope="session")
def level1_parts(system):
    return attribute_partitions(system, LEVEL1, 0.85)


def blocks(*groups):
    """Partition given as space-separated strings, as a set of frozensets."""
    return {frozenset(g.split()) for g in groups}


# Acceptance reporting: one PASS/FAIL line per criterion in the terminal summary.

_acceptance = defaultdict(list)
_names = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number = marker.args[0]
    _names[number] = marker.args[1] if len(marker.args) > 1 else ""
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _acceptance[number].append((item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_acceptance):
        results = _acceptance[number]
        ok = all(passed for _, passed in results)
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {_names[number]} ({len(results)} checks)")
        for name, passed in results:
            if not passed:
                tr.write_line(f"    failed: {name}")
