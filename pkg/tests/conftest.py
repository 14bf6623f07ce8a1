import pytest


def pytest_configure(config):
    config._criteria = []


@pytest.fixture
def criterion(request):
    """Record a numbered criterion; the outcome is printed in the terminal summary."""
    entry = {}
    request.config._criteria.append(entry)

    def start(number, title):
        entry.update(number=number, title=title)
        print(f"criterion {number:2d}: {title}")

    yield start
    rep = getattr(request.node, "rep_call", None)
    entry["passed"] = rep is not None and rep.passed
    print(f"criterion {entry.get('number', 0):2d}: {'PASS' if entry['passed'] else 'FAIL'}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter, config):
    rows = sorted((e for e in config._criteria if "number" in e), key=lambda e: e["number"])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for e in rows:
        mark = "PASS" if e.get("passed") else "FAIL"
        terminalreporter.write_line(f"[{mark}] {e['number']:2d}. {e['title']}")
