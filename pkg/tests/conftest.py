import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cocirank import _kernels_py, kernels  # noqa: E402

DATA = Path(__file__).parent / "data"
SYNTHETIC = DATA / "synthetic_papers.csv"
SYNTHETIC_THRESHOLD = 30

try:
    from cocirank import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

BACKENDS = {"python": _kernels_py}
if _kernels_c is not None:
    BACKENDS["cython"] = _kernels_c


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    impl = BACKENDS[request.param]
    for name in ("power_iteration", "cocitation_counts", "brandes"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


@pytest.fixture
def synthetic_path():
    return SYNTHETIC


_acceptance: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    title = report.user_properties and dict(report.user_properties).get("acceptance")
    if title:
        _acceptance.setdefault(title, []).append(report.passed)


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker:
        item.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda t: int(t.split(".", 1)[0])
    for title in sorted(_acceptance, key=key):
        status = "PASS" if all(_acceptance[title]) else "FAIL"
        terminalreporter.write_line(f"{status}  {title}")
