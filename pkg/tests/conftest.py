import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(test_acceptance.line(n))
