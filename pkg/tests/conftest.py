"""Shared fixtures and the acceptance summary printed at the end of a run."""

from dataclasses import dataclass, field

import pytest


@dataclass
class Criterion:
    number: int
    title: str
    checks: list = field(default_factory=list)

    def check(self, label, worst, tol, strict=False):
        """Record ``worst <= tol`` (``worst < tol`` when ``strict``)."""
        worst = float(worst)
        ok = worst < tol if strict else worst <= tol
        self.checks.append((label, worst, tol, ok))
        return ok

    def require(self, label, ok):
        self.checks.append((label, 0.0 if ok else 1.0, 0.0, bool(ok)))
        return ok

    @property
    def passed(self):
        return bool(self.checks) and all(c[3] for c in self.checks)

    def verdict(self):
        failed = [c for c in self.checks if not c[3]]
        assert not failed, "; ".join(f"{label}: worst {worst:.3e} > tol {tol:.1e}" for label, worst, tol, _ in failed)


_CRITERIA = {}
_OUTCOMES = {}


@pytest.fixture
def criterion(request):
    """Factory for an acceptance criterion tied to the running test."""

    def make(number, title):
        c = Criterion(number, title)
        _CRITERIA[request.node.nodeid] = c
        return c

    return make


def pytest_runtest_logreport(report):
    if report.nodeid in _CRITERIA or "test_acceptance" in report.nodeid:
        if report.when == "call" or report.outcome != "passed":
            _OUTCOMES.setdefault(report.nodeid, report.outcome)
            if report.outcome != "passed":
                _OUTCOMES[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for nodeid, c in sorted(_CRITERIA.items(), key=lambda kv: kv[1].number):
        ok = c.passed and _OUTCOMES.get(nodeid) == "passed"
        worst = max((w / t if t else w for _, w, t, _ in c.checks), default=float("nan"))
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {c.number:2d}: {c.title} (worst residual/tol {worst:.2e})")
        for label, w, t, good in c.checks:
            tr.write_line(f"        {'ok  ' if good else 'FAIL'} {label}: {w:.3e} (tol {t:.1e})")
