import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "glrep",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("glrep")


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "acceptance", None)
    if label is None:
        return
    n, text = label
    if rep.when == "setup" and not rep.passed:
        ACCEPTANCE[n] = ("FAIL", text)
    elif rep.when == "call":
        ACCEPTANCE[n] = ("PASS" if rep.passed else "FAIL", text)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, label = ACCEPTANCE[n]
        terminalreporter.write_line(f"[PRIMARY] criterion {n} {status}: {label}")
