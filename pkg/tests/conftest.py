import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from tqcsim.cli import main

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240607))


def run_cli(*argv):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse exits on usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def run_cli_json(*argv):
    code, out, err = run_cli("--json", *argv)
    assert code == 0, err
    return json.loads(out)


def run_cli_subprocess(*argv, env_extra=None):
    env = dict(os.environ, **(env_extra or {}))
    proc = subprocess.run(
        [sys.executable, "-m", "tqcsim", *argv], capture_output=True, env=env, timeout=600
    )
    return proc.returncode, proc.stdout, proc.stderr


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
