import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from argstr.dsl import load_theory  # noqa: E402

FIG2 = """\
axiom a1: a
defeas d1: a => b w=0.25
prem p1: p w=0.5
strict s1: b, p -> c
"""

TWEETY = """\
axiom bird: bird(tweety)
defeas fly: bird(tweety) => flies(tweety) w=0.95
defeas yellow: bird(tweety) => yellow(tweety) w=0.05
strict animal: bird(tweety) -> animal(tweety)
"""

EXAMPLE1_WAG = """\
{"arguments": [{"id": "a", "weight": 1}, {"id": "b", "weight": 1}, {"id": "c", "weight": 1},
               {"id": "d", "weight": 1}, {"id": "e", "weight": 1}],
 "attacks": [{"from": "a", "to": "b", "weight": 1}, {"from": "b", "to": "c", "weight": 1},
             {"from": "b", "to": "e", "weight": 1}, {"from": "d", "to": "c", "weight": 1}]}
"""


@pytest.fixture
def fig2():
    return load_theory(FIG2)


@pytest.fixture
def fig2_args(fig2):
    """The four arguments of the worked example keyed A1..A4 (axiom, rule d1, premise p1, rule s1)."""
    from argstr.dsl import build_argument

    return {
        "A1": build_argument(fig2, "a1"),
        "A2": build_argument(fig2, "d1(a1)"),
        "A3": build_argument(fig2, "p1"),
        "A4": build_argument(fig2, "s1(d1(a1), p1)"),
    }


# one pass/fail line per acceptance criterion, printed after the run
_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append(("PASS" if report.passed else "FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {doc}")
