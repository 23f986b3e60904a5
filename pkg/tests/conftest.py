import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

SEED = int(os.environ.get("VLINK_SEED", 0))

settings.register_profile("vlink", max_examples=200, derandomize=True, deadline=None)
settings.load_profile("vlink")


def pytest_report_header(config):
    return f"VLINK_SEED={SEED}"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
