import json
from pathlib import Path

import pytest

from gapcorr import _fallback, paircorr

FIXTURES = Path(__file__).parent / "fixtures"


def _backends():
    out = [pytest.param(_fallback, id="python")]
    try:
        from gapcorr import _kernels
    except ImportError:
        return out
    return [pytest.param(_kernels, id="cython")] + out


@pytest.fixture(params=_backends())
def backend(request, monkeypatch):
    """Run the test once per available counting kernel."""
    monkeypatch.setattr(paircorr, "_kernel", request.param)
    monkeypatch.setattr(paircorr, "BACKEND", request.param.__name__.rsplit(".", 1)[-1].strip("_"))
    return request.param


@pytest.fixture(scope="session")
def calibration():
    return json.loads((FIXTURES / "calibration.json").read_text())


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        detail = getattr(item, "acceptance_detail", "")
        _ACCEPTANCE.append((mark.args[0], mark.args[1], rep.outcome.upper(), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, outcome, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] C{cid} {title}" + (f" -- {detail}" if detail else ""))
