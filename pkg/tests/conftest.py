"""Shared fixtures: an in-process CLI runner and the acceptance summary."""

from __future__ import annotations

import contextlib
import io

import pytest

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance-criterion verdict.

    Lines are echoed into the terminal summary so a full run always
    prints one pass/fail line per criterion.
    """

    def _record(number: int, name: str, ok: bool, detail: str) -> bool:
        line = f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} - {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def run_cli():
    """Call the CLI entry in-process; returns (exit code, stdout, stderr)."""

    from gatelab import cli

    def _run(*argv: str):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    return _run
