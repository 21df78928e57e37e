import os

import pytest

from maintbench.analysis import analyze_unit
from maintbench.codemodel import SourceUnit

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def read_fixture(name: str) -> str:
    with open(os.path.join(FIXTURES, name), encoding="utf-8", newline="") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def small_svg():
    """Five-line element class: one public static field, one empty constructor."""
    return analyze_unit(SourceUnit("def/dom/SVGFEFuncBElement.java", read_fixture("SVGFEFuncBElement.java")))


@pytest.fixture(scope="session")
def mask_svg():
    """Twenty-eight-line element class dominated by public mutable fields."""
    return analyze_unit(SourceUnit("def/dom/SVGMaskElement.java", read_fixture("SVGMaskElement.java")))


def god_class_source(n_methods: int = 40, lines_per_method: int = 24) -> str:
    """A single class of roughly n_methods * lines_per_method code lines."""
    out = ["class Huge {"]
    counter = 0
    for m in range(n_methods):
        out.append(f"    int m{m}() {{")
        out.append("        int acc = 0;")
        for _ in range(lines_per_method - 3):
            counter += 1
            out.append(f"        acc = acc + {counter};")
        out.append("        return acc; }")
    out.append("}")
    return "\n".join(out) + "\n"


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  ({detail})" if detail else "")
        request.config.stash.setdefault(ACCEPTANCE, []).append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
