import math

import pytest

# p at x = 1, q = pi/2, and its binary entropy; 40-digit mpmath evaluations
P_HALF_PI = (1 - 1 / math.sqrt(2)) / 2
H_P_HALF_PI = 0.41649553069968745073
# thermodynamic-limit value for |x| >= 1
EPS_ORDERED = math.log(2) - 0.5


@pytest.fixture(scope="session")
def grid4096():
    from tfim_entanglement import build_grid
    return build_grid(4096)

# criterion number -> (passed, title, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail}")
