import pytest

# criterion number -> (ok, note); filled by test_acceptance
CRITERIA: dict[int, tuple[bool, str]] = {}


def record(num: int, ok: bool, note: str = "") -> None:
    prev_ok, prev_note = CRITERIA.get(num, (True, ""))
    notes = "; ".join(n for n in (prev_note, note) if n)
    CRITERIA[num] = (prev_ok and ok, notes)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, note = CRITERIA[num]
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    return record
