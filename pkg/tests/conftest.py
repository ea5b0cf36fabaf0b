import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

from hfquad.field import is_squarefree

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CENSUS_D = [d for d in range(-30, 31) if d not in (0, 1) and is_squarefree(d)]
CENSUS_F = range(2, 13)
CENSUS = [(d, f) for d in CENSUS_D for f in CENSUS_F]

# acceptance criteria report: (number, passed, detail), printed after the run
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {detail}")
